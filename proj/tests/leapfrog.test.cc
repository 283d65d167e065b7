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

#include <numbers>

#include "gtest/gtest.h"
#include "qhmc/matrix.h"
#include "qhmc/parameterization.h"
#include "test_util.h"

using namespace qhmc;

namespace {

void harmonic(std::span<const double> theta, std::span<double> u) {
    for (size_t s = 0; s < theta.size(); s++) {
        u[s] = -theta[s];
    }
}

/// Anharmonic force of log w = -sum (theta^4/4 + cos theta).
void anharmonic(std::span<const double> theta, std::span<double> u) {
    for (size_t s = 0; s < theta.size(); s++) {
        u[s] = -theta[s] * theta[s] * theta[s] + std::sin(theta[s]);
    }
}

double anharmonic_energy(const PhasePoint &z) {
    double h = 0;
    for (size_t s = 0; s < z.position.size(); s++) {
        double t = z.position[s];
        h += 0.5 * z.momentum[s] * z.momentum[s] + 0.25 * t * t * t * t + std::cos(t);
    }
    return h;
}

}  // namespace

TEST(LeapfrogStep, harmonic_literal) {
    auto z = leapfrog_step(std::vector<double>{1}, std::vector<double>{0}, 0.1, harmonic);
    EXPECT_NEAR(z.position[0], 0.995, 1e-15);
    EXPECT_NEAR(z.momentum[0], -0.1, 1e-15);

    auto w = leapfrog_step(std::vector<double>{0}, std::vector<double>{1}, 0.2, harmonic);
    // mid = 0.1, u = -0.1
    EXPECT_NEAR(w.position[0], 0.2 - 0.002, 1e-15);
    EXPECT_NEAR(w.momentum[0], 1 - 0.02, 1e-15);
}

TEST(LeapfrogStep, non_finite_force_throws) {
    ForceFn bad = [](std::span<const double>, std::span<double> u) { u[0] = NAN; };
    EXPECT_THROW(leapfrog_step(std::vector<double>{0}, std::vector<double>{1}, 0.1, bad), NonFiniteForce);
}

TEST(Trajectory, matches_composed_single_steps) {
    Rng rng(1);
    for (int trial = 0; trial < 50; trial++) {
        auto theta = testutil::random_angles(rng, 4, -1.5, 1.5);
        std::vector<double> p(4);
        for (double &v : p) {
            v = rng.normal();
        }
        double tau = 0.01 + 0.1 * rng.uniform();
        size_t steps = 1 + static_cast<size_t>(rng.uniform_int(0, 30));
        PhasePoint z{theta, p};
        for (size_t j = 0; j < steps; j++) {
            z = leapfrog_step(z.position, z.momentum, tau, anharmonic);
        }
        auto merged = trajectory(theta, p, tau, steps, anharmonic);
        ASSERT_FALSE(merged.rejected);
        for (size_t s = 0; s < 4; s++) {
            EXPECT_NEAR(merged.end.position[s], z.position[s], 1e-12);
            EXPECT_NEAR(merged.end.momentum[s], -z.momentum[s], 1e-12);
        }
    }
}

TEST(Trajectory, time_reversible) {
    Rng rng(2);
    for (int trial = 0; trial < 100; trial++) {
        auto theta = testutil::random_angles(rng, 5, -1.5, 1.5);
        std::vector<double> p(5);
        for (double &v : p) {
            v = rng.normal();
        }
        auto once = trajectory(theta, p, 0.05, 25, anharmonic);
        auto twice = trajectory(once.end.position, once.end.momentum, 0.05, 25, anharmonic);
        EXPECT_LT(testutil::relative_error(twice.end.position, theta), 1e-12);
        EXPECT_LT(testutil::relative_error(twice.end.momentum, p), 1e-12);
    }
}

TEST(Trajectory, volume_preserving) {
    // Determinant of the numerical Jacobian of (theta, p) -> end point is 1.
    std::vector<double> z0 = {0.3, -0.7, 0.4, 1.1};
    auto map = [](std::span<const double> z) {
        auto r = trajectory(z.subspan(0, 2), z.subspan(2, 2), 0.1, 15, anharmonic);
        return std::vector<double>{r.end.position[0], r.end.position[1], r.end.momentum[0], r.end.momentum[1]};
    };
    auto jac = finite_difference_jacobian(map, z0, 1e-6);
    EXPECT_NEAR(std::abs(real_determinant(jac, 4)), 1, 1e-6);
}

TEST(Trajectory, energy_error_is_second_order) {
    std::vector<double> theta = {0.9, -0.4};
    std::vector<double> p = {0.5, 1.2};
    double h0 = anharmonic_energy({theta, p});
    double errors[3];
    double taus[3] = {0.04, 0.02, 0.01};
    for (int k = 0; k < 3; k++) {
        size_t steps = static_cast<size_t>(std::lround(1.2 / taus[k]));
        auto r = trajectory(theta, p, taus[k], steps, anharmonic);
        errors[k] = std::abs(anharmonic_energy(r.end) - h0);
    }
    EXPECT_GT(errors[0] / errors[1], 3);
    EXPECT_LT(errors[0] / errors[1], 5);
    EXPECT_GT(errors[1] / errors[2], 3);
    EXPECT_LT(errors[1] / errors[2], 5);
}

TEST(Trajectory, non_finite_force_rejects_in_place) {
    ForceFn wall = [](std::span<const double> theta, std::span<double> u) {
        u[0] = theta[0] > 0.5 ? INFINITY : 0;
    };
    std::vector<double> theta = {0};
    std::vector<double> p = {1};
    auto r = trajectory(theta, p, 0.1, 20, wall);
    EXPECT_TRUE(r.rejected);
    EXPECT_EQ(r.end.position, theta);
    EXPECT_EQ(r.end.momentum, p);
}

TEST(Jitter, ranges) {
    TrajectoryConfig cfg{0.1, 20, 0.1, 0.1};
    Rng rng(3);
    double tau_lo = 1, tau_hi = 0;
    size_t l_lo = 100, l_hi = 0;
    for (int trial = 0; trial < 20000; trial++) {
        auto [tau, steps] = jitter(cfg, rng);
        tau_lo = std::min(tau_lo, tau);
        tau_hi = std::max(tau_hi, tau);
        l_lo = std::min(l_lo, steps);
        l_hi = std::max(l_hi, steps);
    }
    EXPECT_GE(tau_lo, 0.09);
    EXPECT_LE(tau_hi, 0.11);
    EXPECT_LT(tau_lo, 0.0905);
    EXPECT_GT(tau_hi, 0.1095);
    EXPECT_EQ(l_lo, 18u);
    EXPECT_EQ(l_hi, 22u);

    TrajectoryConfig fixed{0.1, 20, 0, 0};
    auto [tau, steps] = jitter(fixed, rng);
    EXPECT_EQ(tau, 0.1);
    EXPECT_EQ(steps, 20u);

    TrajectoryConfig tiny{0.1, 1, 0.1, 0.5};
    for (int trial = 0; trial < 100; trial++) {
        EXPECT_EQ(jitter(tiny, rng).second, 1u);
    }
}

TEST(TrajectoryConfig, validation) {
    EXPECT_THROW((TrajectoryConfig{0, 20, 0.1, 0.1}.validate()), ConfigError);
    EXPECT_THROW((TrajectoryConfig{0.1, 0, 0.1, 0.1}.validate()), ConfigError);
    EXPECT_THROW((TrajectoryConfig{0.1, 20, 0.6, 0.1}.validate()), ConfigError);
    EXPECT_THROW((TrajectoryConfig{0.1, 20, 0.1, -0.1}.validate()), ConfigError);
    EXPECT_NO_THROW((TrajectoryConfig{0.1, 20, 0.1, 0.1}.validate()));
}

TEST(LeapfrogStep, free_particle_literal) {
    ForceFn free = [](std::span<const double>, std::span<double> u) { u[0] = 0; };
    auto z = leapfrog_step(std::vector<double>{0}, std::vector<double>{1}, 0.1, free);
    EXPECT_NEAR(z.position[0], 0.1, 1e-15);
    EXPECT_EQ(z.momentum[0], 1);
    auto r = trajectory(std::vector<double>{0}, std::vector<double>{1}, 0.1, 10, free);
    EXPECT_FALSE(r.rejected);
    EXPECT_NEAR(r.end.position[0], 1.0, 1e-14);
    EXPECT_EQ(r.end.momentum[0], -1);
}

TEST(LeapfrogStep, local_error_is_third_order) {
    // Exact harmonic flow from (1, 0.3) for time tau.
    auto error = [](double tau) {
        double x = 1, v = 0.3;
        auto z = leapfrog_step(std::vector<double>{x}, std::vector<double>{v}, tau, harmonic);
        double ex = x * std::cos(tau) + v * std::sin(tau);
        double ev = -x * std::sin(tau) + v * std::cos(tau);
        return std::hypot(z.position[0] - ex, z.momentum[0] - ev);
    };
    double ratio = error(0.02) / error(0.01);
    EXPECT_GT(ratio, 7.5);
    EXPECT_LT(ratio, 8.5);
}

TEST(Trajectory, harmonic_energy_error_small) {
    auto energy = [](const PhasePoint &z) {
        return 0.5 * (z.position[0] * z.position[0] + z.momentum[0] * z.momentum[0]);
    };
    Rng rng(4);
    for (int trial = 0; trial < 20; trial++) {
        PhasePoint start{{2 * rng.uniform() - 1}, {rng.normal()}};
        auto r = trajectory(start.position, start.momentum, 0.01, 100, harmonic);
        EXPECT_LT(std::abs(energy(r.end) - energy(start)), 1e-3);
    }
}

TEST(Jitter, mean_step_size) {
    TrajectoryConfig cfg{0.1, 20, 0.1, 0.1};
    Rng rng(5);
    double sum = 0;
    const int draws = 100000;
    for (int trial = 0; trial < draws; trial++) {
        sum += jitter(cfg, rng).first;
    }
    EXPECT_NEAR(sum / draws, 0.1, 0.002 * 0.1);
}
