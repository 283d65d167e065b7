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

#include "qhmc/leapfrog.h"

#include <algorithm>
#include <cmath>

namespace qhmc {

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void TrajectoryConfig::validate() const {
    if (!(tau > 0) || !std::isfinite(tau)) {
        throw ConfigError("leapfrog step tau must be positive");
    }
    if (steps == 0) {
        throw ConfigError("leapfrog step count must be at least 1");
    }
    if (!(jitter_tau >= 0 && jitter_tau <= 0.5) || !(jitter_steps >= 0 && jitter_steps <= 0.5)) {
        throw ConfigError("jitter half-widths must lie in [0, 0.5]");
    }
}

PhasePoint leapfrog_step(
    std::span<const double> position, std::span<const double> momentum, double tau, const ForceFn &force) {
    size_t n = position.size();
    std::vector<double> mid(n);
    for (size_t s = 0; s < n; s++) {
        mid[s] = position[s] + 0.5 * tau * momentum[s];
    }
    std::vector<double> u(n);
    force(mid, u);
    if (!all_finite(u)) {
        throw NonFiniteForce("force is not finite at the leapfrog midpoint");
    }
    PhasePoint out{std::vector<double>(n), std::vector<double>(n)};
    for (size_t s = 0; s < n; s++) {
        out.position[s] = position[s] + tau * momentum[s] + 0.5 * tau * tau * u[s];
        out.momentum[s] = momentum[s] + tau * u[s];
    }
    return out;
}

TrajectoryResult trajectory(
    std::span<const double> position, std::span<const double> momentum, double tau, size_t steps,
    const ForceFn &force) {
    size_t n = position.size();
    std::vector<double> theta(n);
    std::vector<double> p(momentum.begin(), momentum.end());
    std::vector<double> u(n);
    for (size_t s = 0; s < n; s++) {
        theta[s] = position[s] + 0.5 * tau * p[s];
    }
    for (size_t j = 1; j <= 2 * steps - 1; j++) {
        if (j % 2 == 1) {
            force(theta, u);
            if (!all_finite(u)) {
                return {PhasePoint{{position.begin(), position.end()}, {momentum.begin(), momentum.end()}}, true};
            }
            for (size_t s = 0; s < n; s++) {
                p[s] += tau * u[s];
            }
        } else {
            for (size_t s = 0; s < n; s++) {
                theta[s] += tau * p[s];
            }
        }
    }
    for (size_t s = 0; s < n; s++) {
        theta[s] += 0.5 * tau * p[s];
        p[s] = -p[s];
    }
    if (!all_finite(theta) || !all_finite(p)) {
        return {PhasePoint{{position.begin(), position.end()}, {momentum.begin(), momentum.end()}}, true};
    }
    return {PhasePoint{std::move(theta), std::move(p)}, false};
}

std::pair<double, size_t> jitter(const TrajectoryConfig &cfg, Rng &rng) {
    double tau = cfg.tau;
    if (cfg.jitter_tau > 0) {
        tau *= 1 + cfg.jitter_tau * (2 * rng.uniform() - 1);
    }
    size_t steps = cfg.steps;
    if (cfg.jitter_steps > 0) {
        double base = static_cast<double>(cfg.steps);
        auto lo = static_cast<int64_t>(std::ceil(base * (1 - cfg.jitter_steps) - 1e-12));
        auto hi = static_cast<int64_t>(std::floor(base * (1 + cfg.jitter_steps) + 1e-12));
        lo = std::max<int64_t>(lo, 1);
        hi = std::max(hi, lo);
        steps = static_cast<size_t>(rng.uniform_int(lo, hi));
    }
    return {tau, steps};
}

}  // namespace qhmc
