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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qhmc/leapfrog.h"
#include "qhmc/parameterization.h"
#include "qhmc/random.h"
#include "qhmc/targets.h"

namespace qhmc {

struct HmcConfig {
    TrajectoryConfig trajectory;
    /// Total number of iterations M, burn-in included.
    size_t chain_length = 51000;
    size_t burn_in = 1000;
    size_t thinning = 1;
    /// Seed of this chain's random stream.
    uint64_t seed = 1;
    /// Starting point; empty means pi/4 in every coordinate.
    AngleVector initial;

    void validate() const;
    AngleVector start_point(size_t dim) const;
};

struct SampleMetadata {
    std::string sampler;
    std::string target_label;
    uint64_t seed = 0;
    std::string rng_algorithm;
    double tau = 0;
    size_t steps = 0;
    double jitter_tau = 0;
    double jitter_steps = 0;
    double step_scale = 0;
    size_t proposals = 0;
    size_t accepted = 0;
    double acceptance_rate = 0;
    size_t degenerate_weights = 0;
};

/// Kept chain points with their derived probabilities, auxiliary values and
/// optional importance weights (empty weights means unit weights).
struct SampleSet {
    std::vector<AngleVector> points;
    std::vector<std::vector<double>> derived_probs;
    std::vector<std::vector<double>> auxiliary;
    std::vector<double> weights;
    SampleMetadata metadata;

    size_t size() const {
        return points.size();
    }
    double weight(size_t i) const {
        return weights.empty() ? 1.0 : weights[i];
    }
};

/// H = 1/2 sum p_s^2 - log w(theta); +infinity where log w = -infinity.
double hamiltonian(std::span<const double> theta, std::span<const double> momentum, const TargetDensity &target);

/// Everything that happened in one HMC iteration.
struct StepRecord {
    AngleVector start;
    AngleVector proposal;
    /// Momentum drawn at the start and the negated final momentum.
    std::vector<double> momentum;
    std::vector<double> final_momentum;
    double log_w_start = 0;
    double log_w_proposal = 0;
    double h_initial = 0;
    double h_final = 0;
    /// min{exp(H_initial - H_final), 1}
    double acceptance = 0;
    double uniform_draw = 0;
    bool accepted = false;
    bool integration_failed = false;
    double tau_used = 0;
    size_t steps_used = 0;

    const AngleVector &next() const {
        return accepted ? proposal : start;
    }
};

/// One HMC iteration: fresh standard-normal momentum, a jittered leapfrog
/// trajectory, and acceptance iff min{exp(H0 - H1), 1} > b with b uniform.
/// A non-finite force or energy rejects the proposal.
StepRecord hmc_step(std::span<const double> theta, const TargetDensity &target, const TrajectoryConfig &cfg, Rng &rng);

using StepObserver = std::function<void(const StepRecord &)>;

/// Runs cfg.chain_length iterations, drops burn-in, keeps every thinning-th
/// point. Throws BadInitialPoint if log w is -infinity at the start.
SampleSet run_chain(const TargetDensity &target, const HmcConfig &cfg, const StepObserver &observer = {});

/// Random-walk Metropolis with proposal theta + step_scale * N(0, I) and the
/// same burn-in, thinning and seeding rules as run_chain.
SampleSet rw_metropolis_chain(const TargetDensity &target, double step_scale, const HmcConfig &cfg);

/// Step scale whose random-walk acceptance rate is near `goal`, found by
/// bisection in log scale on pilot runs of `pilot_length` iterations.
double tune_rw_step_scale(
    const TargetDensity &target, double goal, const HmcConfig &cfg, size_t pilot_length = 5000, int rounds = 20);

}  // namespace qhmc
