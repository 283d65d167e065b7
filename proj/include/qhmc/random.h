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
#include <random>
#include <string_view>

namespace qhmc {

/// Identifier recorded in run manifests. Uniform and normal variates are
/// produced by the transforms below rather than std distributions, whose
/// output is implementation-defined, so streams match across platforms.
inline constexpr std::string_view kRngAlgorithm =
    "mt19937_64/uniform53/marsaglia-polar; stream seed = splitmix64(master + 0x9e3779b97f4a7c15*(stream+1))";

uint64_t splitmix64(uint64_t x);

/// Seed of independent stream `stream` derived from a master seed.
uint64_t derive_seed(uint64_t master, uint64_t stream);

class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal.
    double normal();
    /// Uniform integer on [lo, hi].
    int64_t uniform_int(int64_t lo, int64_t hi);

    uint64_t next_bits() {
        return engine_();
    }

   private:
    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace qhmc
