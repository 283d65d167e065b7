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

#include <string>
#include <vector>

#include "cli/manifest.h"
#include "qhmc/targets.h"

namespace qhmc::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitNotPhysical = 1,
    kExitConfig = 2,
    kExitBadInitialPoint = 3,
    kExitIo = 4,
    kExitInternal = 70,
};

/// Fills the space ("full" for tetrahedron, pauli and bb84, "equatorial"
/// otherwise) and zero counts when they are left empty, and checks the rest.
RunConfig resolve(RunConfig cfg);

TargetDensity build_target(const RunConfig &cfg);

struct SamplingRun {
    std::vector<SampleSet> chains;
    RunManifest manifest;
};

/// Runs cfg.chains chains on separate threads; bb84 samples come back with
/// their importance weights attached.
SamplingRun run_sampling(const RunConfig &cfg);

/// Multinomial counts of `shots` draws; probabilities below 1e-15 are
/// treated as exact zeros.
std::vector<double> simulate_counts(std::vector<double> probabilities, size_t shots, uint64_t seed);

/// Counts file: header "outcome,count", outcome ids 1..K, or jk = 11..44 for
/// the two-qubit measurement.
void write_counts_file(const std::string &path, const std::vector<double> &counts, bool two_qubit);
std::vector<double> read_counts_file(const std::string &path, size_t outcomes, bool two_qubit);

/// Entry point of the qhmc tool; diagnostics go to stderr.
int run_cli(int argc, const char *const *argv);

}  // namespace qhmc::cli
