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
#include <string>
#include <vector>

#include "cli/sample_io.h"
#include "json.hpp"
#include "qhmc/hmc.h"

namespace qhmc::cli {

inline constexpr const char *kToolVersion = "0.1.0";

/// Everything needed to rerun a sampling job.
struct RunConfig {
    std::string pom = "tetrahedron";
    std::string space = "full";
    std::string prior = "primitive";
    std::vector<double> counts;
    std::vector<double> mock;
    size_t points = 50000;
    uint64_t seed = 1;
    /// 0 selects the per-target default (0.05 for bb84, 0.1 otherwise).
    double tau = 0;
    size_t steps = 20;
    double jitter_tau = 0.1;
    double jitter_steps = 0.1;
    size_t burn_in = 1000;
    size_t thinning = 1;
    size_t chains = 1;
    std::vector<double> initial;
    std::string format = "csv";
    std::string output = "sample.csv";

    bool operator==(const RunConfig &) const = default;

    /// Per-chain engine settings; chain c runs on derive_seed(seed, c).
    HmcConfig hmc_config(size_t chain) const;
};

struct ChainSummary {
    uint64_t seed = 0;
    size_t proposals = 0;
    size_t accepted = 0;
    double acceptance_rate = 0;
    size_t degenerate_weights = 0;

    bool operator==(const ChainSummary &) const = default;
};

struct RunManifest {
    std::string tool_version = kToolVersion;
    RunConfig config;
    uint64_t seed = 0;
    std::string rng_algorithm;
    std::string target_label;
    double acceptance_rate = 0;
    double wall_time_seconds = 0;
    size_t degenerate_weights = 0;
    std::vector<ChainSummary> chains;

    bool operator==(const RunManifest &) const = default;
};

void to_json(nlohmann::json &j, const RunConfig &c);
void from_json(const nlohmann::json &j, RunConfig &c);
void to_json(nlohmann::json &j, const RunManifest &m);
void from_json(const nlohmann::json &j, RunManifest &m);

void write_manifest(const std::string &path, const RunManifest &m);
RunManifest read_manifest(const std::string &path);

}  // namespace qhmc::cli
