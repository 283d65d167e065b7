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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qhmc/errors.h"
#include "qhmc/random.h"
#include "qhmc/targets.h"

namespace qhmc {

/// The force was infinite or NaN somewhere along a trajectory.
struct NonFiniteForce : QhmcError {
    using QhmcError::QhmcError;
};

/// Base step size tau and step count L, each randomized per trajectory by a
/// uniform relative half-width.
struct TrajectoryConfig {
    double tau = 0.1;
    size_t steps = 20;
    double jitter_tau = 0.1;
    double jitter_steps = 0.1;

    /// Throws ConfigError on tau <= 0, steps == 0 or jitters outside [0, 0.5].
    void validate() const;
};

struct PhasePoint {
    std::vector<double> position;
    std::vector<double> momentum;
};

/// One leapfrog jump of duration tau:
///   mid = theta + tau/2 p,  theta' = theta + tau p + tau^2/2 u(mid),  p' = p + tau u(mid).
/// Throws NonFiniteForce if u(mid) is not finite.
PhasePoint leapfrog_step(
    std::span<const double> position, std::span<const double> momentum, double tau, const ForceFn &force);

struct TrajectoryResult {
    /// Final (theta*, -p) on success; the start point when rejected.
    PhasePoint end;
    bool rejected = false;
};

/// L leapfrog jumps with adjacent half drifts merged: a half drift, then
/// 2L - 1 alternating kicks (odd j) and drifts (even j), a final half drift,
/// and momentum negation. Applying it twice returns the start point.
TrajectoryResult trajectory(
    std::span<const double> position, std::span<const double> momentum, double tau, size_t steps,
    const ForceFn &force);

/// (tau_used, L_used): tau uniform in tau(1 +- jitter_tau), L uniform over
/// the integers in [L(1 - jitter_steps), L(1 + jitter_steps)], at least 1.
std::pair<double, size_t> jitter(const TrajectoryConfig &cfg, Rng &rng);

}  // namespace qhmc
