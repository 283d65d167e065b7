// Copyright 2026 The qhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhmc/errors.h"
#include "qhmc/hmc.h"

namespace qhmc::cli {

/// Sample file does not follow the column contract.
struct MalformedSample : QhmcError {
    using QhmcError::QhmcError;
};

struct IoFailure : QhmcError {
    using QhmcError::QhmcError;
};

/// Column layout theta_1..theta_S, p_1..p_K[, q][, weight][, chain].
struct SampleLayout {
    size_t angles = 0;
    size_t probabilities = 0;
    bool has_q = false;
    bool has_weight = false;
    bool has_chain = false;

    std::vector<std::string> header() const;
    size_t width() const;
    bool operator==(const SampleLayout &) const = default;
};

enum class SampleFormat { csv, jsonl };

SampleFormat parse_sample_format(const std::string &name);

/// A sample read back from disk; chain ids are 0 without a chain column.
struct LoadedSample {
    SampleLayout layout;
    SampleSet samples;
    std::vector<uint32_t> chains;
};

/// Layout that writes every field of the given chains.
SampleLayout layout_for(const std::vector<SampleSet> &chains);

/// Rows of all chains in order, 17 significant digits.
void write_samples(std::ostream &out, const std::vector<SampleSet> &chains, SampleFormat format);

LoadedSample read_samples(std::istream &in);

void write_sample_file(const std::string &path, const std::vector<SampleSet> &chains, SampleFormat format);
LoadedSample read_sample_file(const std::string &path);

/// %.17g
std::string format_double(double v);

}  // namespace qhmc::cli
