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

#include "qhmc/hmc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qhmc/errors.h"

namespace qhmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void record_point(SampleSet &out, const TargetDensity &target, const AngleVector &theta) {
    out.points.push_back(theta);
    if (target.probabilities) {
        out.derived_probs.push_back(target.probabilities(theta));
    }
    if (target.auxiliary) {
        out.auxiliary.push_back(target.auxiliary(theta));
    }
}

double checked_start(const TargetDensity &target, const AngleVector &start) {
    if (start.size() != target.dim) {
        throw BadDimension("initial point has the wrong number of angles");
    }
    double lw = target.log_w(start);
    if (!(lw > -kInf) || std::isnan(lw)) {
        throw BadInitialPoint("target density vanishes at the initial point");
    }
    return lw;
}

}  // namespace

void HmcConfig::validate() const {
    trajectory.validate();
    if (chain_length <= burn_in) {
        throw ConfigError("chain length must exceed burn-in");
    }
    if (thinning == 0) {
        throw ConfigError("thinning must be at least 1");
    }
}

AngleVector HmcConfig::start_point(size_t dim) const {
    if (initial.empty()) {
        return AngleVector(dim, std::numbers::pi / 4);
    }
    return initial;
}

namespace {

double energy(double log_w, std::span<const double> momentum) {
    if (!(log_w > -kInf) || std::isnan(log_w)) {
        return kInf;
    }
    double kinetic = 0;
    for (double p : momentum) {
        kinetic += p * p;
    }
    return 0.5 * kinetic - log_w;
}

}  // namespace

double hamiltonian(std::span<const double> theta, std::span<const double> momentum, const TargetDensity &target) {
    return energy(target.log_w(theta), momentum);
}

StepRecord hmc_step(
    std::span<const double> theta, const TargetDensity &target, const TrajectoryConfig &cfg, Rng &rng) {
    StepRecord rec;
    rec.start.assign(theta.begin(), theta.end());
    rec.momentum.resize(theta.size());
    for (double &p : rec.momentum) {
        p = rng.normal();
    }
    auto [tau, steps] = jitter(cfg, rng);
    rec.tau_used = tau;
    rec.steps_used = steps;

    rec.log_w_start = target.log_w(rec.start);
    rec.h_initial = energy(rec.log_w_start, rec.momentum);

    auto traj = trajectory(rec.start, rec.momentum, tau, steps, target.force);
    rec.integration_failed = traj.rejected;
    rec.proposal = std::move(traj.end.position);
    rec.final_momentum = std::move(traj.end.momentum);
    if (traj.rejected) {
        rec.log_w_proposal = -kInf;
        rec.h_final = kInf;
    } else {
        rec.log_w_proposal = target.log_w(rec.proposal);
        rec.h_final = energy(rec.log_w_proposal, rec.final_momentum);
    }

    double delta = rec.h_initial - rec.h_final;
    rec.acceptance = std::isnan(delta) ? 0.0 : std::min(std::exp(delta), 1.0);
    rec.uniform_draw = rng.uniform();
    rec.accepted = rec.acceptance > rec.uniform_draw;
    return rec;
}

SampleSet run_chain(const TargetDensity &target, const HmcConfig &cfg, const StepObserver &observer) {
    cfg.validate();
    AngleVector theta = cfg.start_point(target.dim);
    checked_start(target, theta);

    Rng rng(cfg.seed);
    SampleSet out;
    out.metadata.sampler = "hmc";
    out.metadata.target_label = target.label;
    out.metadata.seed = cfg.seed;
    out.metadata.rng_algorithm = std::string(kRngAlgorithm);
    out.metadata.tau = cfg.trajectory.tau;
    out.metadata.steps = cfg.trajectory.steps;
    out.metadata.jitter_tau = cfg.trajectory.jitter_tau;
    out.metadata.jitter_steps = cfg.trajectory.jitter_steps;

    size_t kept_slot = 0;
    for (size_t j = 0; j < cfg.chain_length; j++) {
        auto rec = hmc_step(theta, target, cfg.trajectory, rng);
        if (observer) {
            observer(rec);
        }
        if (rec.accepted) {
            theta = rec.proposal;
        }
        if (j < cfg.burn_in) {
            continue;
        }
        out.metadata.proposals++;
        out.metadata.accepted += rec.accepted ? 1 : 0;
        if (kept_slot++ % cfg.thinning == 0) {
            record_point(out, target, theta);
        }
    }
    out.metadata.acceptance_rate =
        static_cast<double>(out.metadata.accepted) / static_cast<double>(out.metadata.proposals);
    return out;
}

SampleSet rw_metropolis_chain(const TargetDensity &target, double step_scale, const HmcConfig &cfg) {
    cfg.validate();
    if (!(step_scale >= 0)) {
        throw ConfigError("random-walk step scale must be non-negative");
    }
    AngleVector theta = cfg.start_point(target.dim);
    double lw = checked_start(target, theta);

    Rng rng(cfg.seed);
    SampleSet out;
    out.metadata.sampler = "rw-metropolis";
    out.metadata.target_label = target.label;
    out.metadata.seed = cfg.seed;
    out.metadata.rng_algorithm = std::string(kRngAlgorithm);
    out.metadata.step_scale = step_scale;

    AngleVector proposal(theta.size());
    size_t kept_slot = 0;
    for (size_t j = 0; j < cfg.chain_length; j++) {
        for (size_t s = 0; s < theta.size(); s++) {
            proposal[s] = theta[s] + step_scale * rng.normal();
        }
        double lw_new = target.log_w(proposal);
        double ratio = std::isnan(lw_new) ? 0.0 : std::min(std::exp(lw_new - lw), 1.0);
        bool accepted = ratio > rng.uniform();
        if (accepted) {
            theta = proposal;
            lw = lw_new;
        }
        if (j < cfg.burn_in) {
            continue;
        }
        out.metadata.proposals++;
        out.metadata.accepted += accepted ? 1 : 0;
        if (kept_slot++ % cfg.thinning == 0) {
            record_point(out, target, theta);
        }
    }
    out.metadata.acceptance_rate =
        static_cast<double>(out.metadata.accepted) / static_cast<double>(out.metadata.proposals);
    return out;
}

double tune_rw_step_scale(
    const TargetDensity &target, double goal, const HmcConfig &cfg, size_t pilot_length, int rounds) {
    HmcConfig pilot = cfg;
    pilot.burn_in = std::min<size_t>(cfg.burn_in, pilot_length / 5);
    pilot.chain_length = pilot.burn_in + pilot_length;
    pilot.thinning = 1;
    double lo = std::log(1e-4);
    double hi = std::log(10.0);
    for (int r = 0; r < rounds; r++) {
        double mid = 0.5 * (lo + hi);
        double rate = rw_metropolis_chain(target, std::exp(mid), pilot).metadata.acceptance_rate;
        // Acceptance falls as the step grows.
        if (rate > goal) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace qhmc
