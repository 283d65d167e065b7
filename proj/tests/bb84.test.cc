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

#include "qhmc/bb84.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gtest/gtest.h"
#include "qhmc/chsh.h"
#include "qhmc/errors.h"
#include "test_util.h"

using namespace qhmc;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix random_state(Rng &rng, size_t dim) {
    auto h = testutil::random_hermitian(rng, dim);
    auto rho = h * h.adjoint();
    return rho * Complex(1 / rho.trace().real(), 0);
}

std::vector<double> nine_angles(Rng &rng) {
    return testutil::random_angles(rng, 9, 0, kPi / 2);
}

/// p_jk = (1 + s_j s_k C[a_j][a_k]) / 16 for unpolarized marginals, where
/// outcome j measures axis a_j (x or y) with sign s_j.
Bb84Probabilities from_correlations(double xx, double xy, double yx, double yy) {
    const int axis[4] = {0, 1, 0, 1};
    const double sign[4] = {1, 1, -1, -1};
    const double c[2][2] = {{xx, xy}, {yx, yy}};
    Bb84Probabilities p;
    for (int j = 0; j < 4; j++) {
        for (int k = 0; k < 4; k++) {
            p.values[j * 4 + k] = (1 + sign[j] * sign[k] * c[axis[j]][axis[k]]) / 16;
        }
    }
    return p;
}

double det_real(const ComplexMatrix &m) {
    return determinant(m).real();
}

}  // namespace

TEST(Bb84Probabilities, singlet_literal) {
    auto p = bb84_probabilities(two_qubit_state("singlet"));
    for (int j = 1; j <= 4; j++) {
        for (int k = 1; k <= 4; k++) {
            double expected = 1.0 / 16;
            if (j == k) {
                expected = 0;
            } else if ((j - k) % 2 == 0) {
                expected = 1.0 / 8;
            }
            EXPECT_NEAR(p(j, k), expected, 1e-15) << j << k;
        }
    }
    EXPECT_NEAR(p.p_even(), -0.25, 1e-15);
    EXPECT_TRUE(satisfies_basic_constraints(p));
}

TEST(Bb84Probabilities, uniform_and_mixed) {
    auto u = Bb84Probabilities::uniform();
    auto m = bb84_probabilities(two_qubit_state("mixed"));
    for (size_t i = 0; i < 16; i++) {
        EXPECT_DOUBLE_EQ(u.values[i], 1.0 / 16);
        EXPECT_NEAR(m.values[i], 1.0 / 16, 1e-15);
    }
    auto noisy = bb84_probabilities(two_qubit_state("singlet", 0.5));
    EXPECT_NEAR(noisy(1, 3), 0.5 / 8 + 0.5 / 16, 1e-15);
    EXPECT_THROW(two_qubit_state("bell", 0), ConfigError);
    EXPECT_THROW(two_qubit_state("singlet", 1.5), ConfigError);
    EXPECT_THROW(Bb84Probabilities::from_span(std::vector<double>(15, 0.0)), BadDimension);
}

TEST(Bb84Probabilities, basic_constraints_reject) {
    auto p = Bb84Probabilities::uniform();
    p.values[0] += 0.01;
    p.values[1] -= 0.01;
    EXPECT_FALSE(satisfies_basic_constraints(p));
    EXPECT_FALSE(physicality_check(p));
    EXPECT_THROW(rho0_from_probs(p), ConstraintViolation);
    EXPECT_THROW(q_bounds(p), ConstraintViolation);
    auto negative = Bb84Probabilities::uniform();
    negative.values[5] = -0.01;
    negative.values[7] = 0.0725;
    EXPECT_FALSE(satisfies_basic_constraints(negative));
}

TEST(BasisChange, round_trip_and_two_probability_routes) {
    Rng rng(1);
    for (int trial = 0; trial < 100; trial++) {
        auto rho = random_state(rng, 4);
        auto recon = standard_to_reconstruction(rho);
        EXPECT_LT(max_abs_difference(reconstruction_to_standard(recon), rho), 1e-14);
        auto direct = bb84_probabilities(rho);
        auto via_recon = probabilities_from_reconstruction(recon);
        for (size_t i = 0; i < 16; i++) {
            EXPECT_NEAR(direct.values[i], via_recon.values[i], 1e-14);
        }
        // The unmeasured correlation is sigma_z x sigma_z in the standard basis.
        auto zz = kron(pauli_z(), pauli_z());
        EXPECT_NEAR(q_from_reconstruction(recon), (rho * zz).trace().real(), 1e-14);
        EXPECT_TRUE(physicality_check(direct));
    }
}

TEST(Reconstruction, family_contains_real_states) {
    Rng rng(2);
    for (int trial = 0; trial < 200; trial++) {
        auto theta = nine_angles(rng);
        auto rho = nine_angle_density(theta);
        auto point = nine_angle_map(theta);
        EXPECT_NEAR(point.q, q_from_reconstruction(rho), 1e-15);
        EXPECT_LT(max_abs_difference(rho_of_q(point.p, point.q), rho), 1e-14);
        auto interval = q_bounds(point.p);
        EXPECT_TRUE(interval.contains(point.q, 1e-9));
    }
}

TEST(Reconstruction, sigma_matrix_literal) {
    const auto &s = sigma_matrix();
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double expected = 0;
            if ((r == 0 && c == 3) || (r == 3 && c == 0)) {
                expected = -1;
            } else if ((r == 1 && c == 2) || (r == 2 && c == 1)) {
                expected = 1;
            }
            EXPECT_EQ(s(r, c), Complex(expected, 0));
        }
    }
}

TEST(Quartic, interpolation_and_trace_forms_agree_with_determinant) {
    Rng rng(3);
    for (int trial = 0; trial < 200; trial++) {
        auto p = nine_angle_map(nine_angles(rng)).p;
        auto a = det_quartic(p);
        auto b = det_quartic_traces(p);
        for (size_t i = 0; i < 5; i++) {
            EXPECT_NEAR(a[i], b[i], 1e-14);
        }
        for (double q : {-0.9, -0.31, 0.27, 0.75}) {
            double v = a[0] + q * (a[1] + q * (a[2] + q * (a[3] + q * a[4])));
            EXPECT_NEAR(v, det_real(rho_of_q(p, q)), 1e-15);
        }
        EXPECT_NEAR(a[4], 1.0 / 256, 1e-15);
    }
}

TEST(Quartic, uniform_literal) {
    // det(I/4 + q Sigma / 4) = (1 - q^2)^2 / 256
    auto c = det_quartic(Bb84Probabilities::uniform());
    std::array<double, 5> expected = {1.0 / 256, 0, -2.0 / 256, 0, 1.0 / 256};
    for (size_t i = 0; i < 5; i++) {
        EXPECT_NEAR(c[i], expected[i], 1e-16);
    }
    auto closed = det_quartic_closed_form(Bb84Probabilities::uniform());
    for (size_t i = 0; i < 5; i++) {
        EXPECT_NEAR(closed[i], expected[i], 1e-16);
    }
}

TEST(Quartic, closed_trace_form_matches_interpolation) {
    // The closed trace form is checked against the interpolated quartic,
    // which is the reference; the largest gap per power is also recorded.
    Rng rng(16);
    std::array<double, 5> gap{};
    for (int trial = 0; trial < 200; trial++) {
        auto p = nine_angle_map(nine_angles(rng)).p;
        auto a = det_quartic(p);
        auto closed = det_quartic_closed_form(p);
        for (size_t i = 0; i < 5; i++) {
            gap[i] = std::max(gap[i], std::abs(a[i] - closed[i]));
        }
    }
    for (size_t i = 0; i < 5; i++) {
        RecordProperty("closed_form_gap_q" + std::to_string(i), std::to_string(gap[i]));
        std::printf("closed-form quartic, power %zu: largest gap %.3e\n", i, gap[i]);
    }
    for (double g : gap) {
        EXPECT_LT(g, 1e-15);
    }
}

TEST(QBounds, uniform_literal) {
    auto interval = q_bounds(Bb84Probabilities::uniform());
    EXPECT_NEAR(interval.q_min, -1, 1e-12);
    EXPECT_NEAR(interval.q_max, 1, 1e-12);
    EXPECT_TRUE(physicality_check(Bb84Probabilities::uniform()));
}

TEST(QBounds, singlet_is_a_single_point) {
    auto p = bb84_probabilities(two_qubit_state("singlet"));
    auto interval = q_bounds(p);
    EXPECT_LT(interval.width(), 1e-6);
    EXPECT_TRUE(interval.contains(-1, 1e-6));
    auto noisy = q_bounds(bb84_probabilities(two_qubit_state("singlet", 0.2)));
    EXPECT_GT(noisy.width(), 0.01);
    EXPECT_TRUE(noisy.contains(-0.8, 1e-9));
}

TEST(QBounds, agrees_with_quartic_roots) {
    Rng rng(4);
    int compared = 0;
    for (int trial = 0; trial < 300; trial++) {
        auto point = nine_angle_map(nine_angles(rng));
        auto direct = q_bounds(point.p);
        QInterval quartic;
        try {
            quartic = q_bounds_from_quartic(point.p);
        } catch (const NotPhysical &) {
            continue;
        }
        EXPECT_NEAR(direct.q_min, quartic.q_min, 1e-9);
        EXPECT_NEAR(direct.q_max, quartic.q_max, 1e-9);
        compared++;
    }
    EXPECT_GT(compared, 250);
}

TEST(QBounds, endpoints_are_boundary_states) {
    Rng rng(5);
    for (int trial = 0; trial < 100; trial++) {
        auto p = nine_angle_map(nine_angles(rng)).p;
        auto interval = q_bounds(p);
        if (interval.width() < 1e-6) {
            continue;
        }
        double mid = 0.5 * (interval.q_min + interval.q_max);
        EXPECT_GT(min_eigenvalue(rho_of_q(p, mid)), 0);
        if (interval.q_min > -1 + 1e-9) {
            EXPECT_NEAR(min_eigenvalue(rho_of_q(p, interval.q_min)), 0, 1e-10);
            EXPECT_LT(min_eigenvalue(rho_of_q(p, interval.q_min - 1e-4)), 0);
        }
        if (interval.q_max < 1 - 1e-9) {
            EXPECT_NEAR(min_eigenvalue(rho_of_q(p, interval.q_max)), 0, 1e-10);
            EXPECT_LT(min_eigenvalue(rho_of_q(p, interval.q_max + 1e-4)), 0);
        }
    }
}

TEST(QBounds, unphysical_correlations) {
    // Marginal constraints hold but the correlation block has a singular
    // value above 1.
    auto p = from_correlations(-1, 1, 0, -1);
    EXPECT_TRUE(satisfies_basic_constraints(p));
    EXPECT_THROW(q_bounds(p), NotPhysical);
    EXPECT_FALSE(physicality_check(p));
    auto ok = from_correlations(-0.5, 0.2, 0.1, -0.5);
    EXPECT_TRUE(physicality_check(ok));
}

TEST(NineAngles, coordinates_literal) {
    auto c = bb84_coordinates(Bb84Probabilities::uniform(), 0.25);
    std::array<double, 9> expected = {1.0 / 16, 1.0 / 16, 1.0 / 16, 0, 0, 0, 0, 0, 0.25};
    for (size_t i = 0; i < 9; i++) {
        EXPECT_DOUBLE_EQ(c[i], expected[i]);
    }
}

TEST(NineAngles, density_is_a_state) {
    Rng rng(6);
    for (int trial = 0; trial < 100; trial++) {
        auto rho = nine_angle_density(nine_angles(rng));
        EXPECT_NO_THROW(DensityMatrix{rho});
        for (auto z : rho.entries()) {
            EXPECT_EQ(z.imag(), 0);
        }
    }
    EXPECT_THROW(nine_angle_density(std::vector<double>(8, 0.3)), BadDimension);
}

TEST(NineAngles, analytic_jacobian_matches_finite_differences) {
    Rng rng(7);
    for (int trial = 0; trial < 100; trial++) {
        auto theta = nine_angles(rng);
        double analytic = nine_angle_jacobian(theta);
        double numeric = nine_angle_jacobian_numeric(theta);
        EXPECT_NEAR(analytic, numeric, 1e-5 * analytic + 1e-22);
    }
}

TEST(Bb84Target, log_density_and_derived_values) {
    std::vector<double> counts(16, 0.0);
    counts[2] = 8;
    counts[8] = 8;
    counts[1] = 4;
    counts[15] = 1;
    auto t = bb84_target(counts);
    EXPECT_EQ(t.dim, 9u);
    Rng rng(8);
    for (int trial = 0; trial < 50; trial++) {
        auto theta = nine_angles(rng);
        auto point = nine_angle_map(theta);
        double expected = std::log(nine_angle_jacobian(theta));
        for (size_t i = 0; i < 16; i++) {
            expected += counts[i] * std::log(point.p.values[i]);
        }
        EXPECT_NEAR(t.log_w(theta), expected, 1e-9 * std::abs(expected));
        auto probs = t.probabilities(theta);
        ASSERT_EQ(probs.size(), 16u);
        for (size_t i = 0; i < 16; i++) {
            EXPECT_NEAR(probs[i], point.p.values[i], 1e-15);
        }
        EXPECT_NEAR(t.auxiliary(theta)[0], point.q, 1e-15);
    }
    EXPECT_THROW(bb84_target(std::vector<double>(4, 1.0)), ConfigError);
}

TEST(Reweighting, inverse_interval_width) {
    Rng rng(9);
    SampleSet s;
    for (int i = 0; i < 20; i++) {
        auto p = nine_angle_map(nine_angles(rng)).p;
        s.points.push_back({});
        s.derived_probs.emplace_back(p.values.begin(), p.values.end());
    }
    auto singlet = bb84_probabilities(two_qubit_state("singlet"));
    s.points.push_back({});
    s.derived_probs.emplace_back(singlet.values.begin(), singlet.values.end());
    auto w = reweight_marginal(s);
    ASSERT_EQ(w.weights.size(), 21u);
    for (size_t i = 0; i < 20; i++) {
        auto interval = q_bounds(Bb84Probabilities::from_span(s.derived_probs[i]));
        if (interval.width() >= 1e-9) {
            EXPECT_DOUBLE_EQ(w.weights[i], 1 / interval.width());
        }
    }
    EXPECT_EQ(w.weights[20], 1e9);
    EXPECT_GE(w.metadata.degenerate_weights, 1u);
}

TEST(Reconstruction, rho0_and_family_literals) {
    auto u = Bb84Probabilities::uniform();
    EXPECT_LT(max_abs_difference(rho0_from_probs(u), ComplexMatrix::identity(4) * Complex(0.25)), 1e-15);
    EXPECT_LT(max_abs_difference(rho_of_q(u, 0), rho0_from_probs(u)), 1e-15);
    auto spectrum = hermitian_eigenvalues(rho_of_q(u, 1));
    std::vector<double> expected = {0, 0, 0.5, 0.5};
    for (size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(spectrum[i], expected[i], 1e-14);
    }
    Rng rng(10);
    for (int trial = 0; trial < 100; trial++) {
        auto p = bb84_probabilities(random_state(rng, 4));
        auto rho0 = rho0_from_probs(p);
        EXPECT_NEAR(rho0.trace().real(), 1, 1e-14);
        EXPECT_NEAR(4 * (p(1, 1) + p(3, 1) + p(1, 3) + p(3, 3)), 1, 1e-14);
        double q = 2 * rng.uniform() - 1;
        EXPECT_NEAR((rho_of_q(p, q) * sigma_matrix()).trace().real(), q, 1e-14);
    }
}

TEST(NineAngles, first_angle_zero_is_a_product_state) {
    Rng rng(11);
    for (int trial = 0; trial < 5; trial++) {
        auto theta = nine_angles(rng);
        theta[0] = 0;
        auto point = nine_angle_map(theta);
        // Born rule for |+x>|+x>: single-side distribution (1/2, 1/4, 0, 1/4).
        const double side[4] = {0.5, 0.25, 0, 0.25};
        for (int j = 1; j <= 4; j++) {
            for (int k = 1; k <= 4; k++) {
                EXPECT_NEAR(point.p(j, k), side[j - 1] * side[k - 1], 1e-15);
            }
        }
        EXPECT_NEAR(point.p(1, 1), 0.25, 1e-15);
        EXPECT_NEAR(point.p(1, 2), 0.125, 1e-15);
        EXPECT_NEAR(point.p(2, 2), 0.0625, 1e-15);
        EXPECT_NEAR(point.q, 0, 1e-15);
    }
}

TEST(NineAngles, random_points_are_physical) {
    Rng rng(12);
    for (int trial = 0; trial < 1000; trial++) {
        auto point = nine_angle_map(nine_angles(rng));
        ASSERT_TRUE(physicality_check(point.p));
        EXPECT_TRUE(q_bounds(point.p).contains(point.q, 1e-8));
    }
}

TEST(QBounds, product_state_pins_true_q) {
    auto plus = ComplexMatrix(2);
    plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
    auto rho = kron(plus, plus);
    double q_true = (rho * kron(pauli_z(), pauli_z())).trace().real();
    EXPECT_NEAR(q_true, 0, 1e-15);
    auto p = bb84_probabilities(rho);
    auto interval = q_bounds(p);
    EXPECT_TRUE(interval.contains(q_true, 1e-9));
    // A pure state has a unique completion: any other q breaks positivity.
    EXPECT_LT(interval.width(), 1e-6);
    EXPECT_LT(min_eigenvalue(rho_of_q(p, 0.01)), 0);
    EXPECT_LT(min_eigenvalue(rho_of_q(p, -0.01)), 0);
}

TEST(Physicality, scaled_singlet_family_is_rejected) {
    // Stretching the singlet correlations past 1 drives some p_jk negative.
    EXPECT_FALSE(physicality_check(from_correlations(-1.2, 0, 0, -1.2)));
    EXPECT_TRUE(physicality_check(bb84_probabilities(two_qubit_state("singlet"))));
    // A family that keeps every p_jk positive but whose correlation block has
    // a singular value above 1; a grid scan over q finds no positive member.
    for (double c : {1.05, 1.2, 1.4}) {
        auto p = from_correlations(-0.5 * (c + 0.4), 0.5 * (c - 0.4), 0.5 * (c - 0.4), -0.5 * (c + 0.4));
        ASSERT_TRUE(satisfies_basic_constraints(p));
        double best = -1;
        for (int i = 0; i <= 2000; i++) {
            best = std::max(best, min_eigenvalue(rho_of_q(p, -1 + i * 1e-3)));
        }
        EXPECT_LT(best, 0) << c;
        EXPECT_FALSE(physicality_check(p)) << c;
    }
}

TEST(Bb84Target, force_and_step_halved_differences_agree) {
    auto t = bb84_target(std::vector<double>(16, 1.0));
    Rng rng(13);
    for (int trial = 0; trial < 20; trial++) {
        auto theta = nine_angles(rng);
        std::vector<double> force(9);
        t.force(theta, force);
        for (size_t s = 0; s < 9; s++) {
            auto central = [&](double h) {
                auto plus = theta;
                auto minus = theta;
                plus[s] += h;
                minus[s] -= h;
                return (t.log_w(plus) - t.log_w(minus)) / (2 * h);
            };
            double full = central(1e-6);
            double halved = central(5e-7);
            EXPECT_NEAR(full, halved, 1e-4 * std::max(1.0, std::abs(halved)));
            EXPECT_NEAR(force[s], halved, 1e-4 * std::max(1.0, std::abs(halved)));
        }
    }
}

TEST(Reweighting, uniform_point_weight) {
    SampleSet s;
    auto u = Bb84Probabilities::uniform();
    s.points.push_back({});
    s.derived_probs.emplace_back(u.values.begin(), u.values.end());
    auto w = reweight_marginal(s);
    EXPECT_DOUBLE_EQ(w.weights[0], 0.5);
    EXPECT_EQ(w.metadata.degenerate_weights, 0u);
}

TEST(Reweighting, zero_count_moment_matches_importance_oracle) {
    // HMC side: nine-angle chain on the measure alone, then 1/width weights.
    HmcConfig cfg;
    cfg.trajectory.tau = 0.05;
    cfg.trajectory.steps = 20;
    cfg.chain_length = 6000;
    cfg.seed = 14;
    auto s = reweight_marginal(run_chain(bb84_target(std::vector<double>(16, 0.0)), cfg));
    for (const auto &probs : s.derived_probs) {
        ASSERT_TRUE(physicality_check(Bb84Probabilities::from_span(probs)));
    }
    // Batch means for the ratio estimate of E[p11^2].
    const size_t batches = 20;
    size_t per = s.size() / batches;
    std::vector<double> batch_values;
    double num = 0, den = 0;
    for (size_t b = 0; b < batches; b++) {
        double bn = 0, bd = 0;
        for (size_t i = b * per; i < (b + 1) * per; i++) {
            double p11 = s.derived_probs[i][0];
            bn += s.weights[i] * p11 * p11;
            bd += s.weights[i];
        }
        batch_values.push_back(bn / bd);
        num += bn;
        den += bd;
    }
    double hmc = num / den;
    double var = 0;
    for (double v : batch_values) {
        var += (v - hmc) * (v - hmc);
    }
    double hmc_se = std::sqrt(var / (batches - 1) / batches);

    // Oracle: flat measure on real symmetric unit-trace positive matrices,
    // drawn as a uniform diagonal on the simplex and uniform off-diagonals
    // within the 2x2 minor bounds, importance-corrected by the box volume.
    Rng rng(15);
    double on = 0, od = 0, on2 = 0, od2 = 0, ocross = 0;
    long accepted = 0;
    for (long draw = 0; draw < 300000; draw++) {
        double e[4];
        double sum = 0;
        for (double &x : e) {
            x = -std::log(rng.uniform());
            sum += x;
        }
        ComplexMatrix rho(4);
        double box = 1;
        for (int i = 0; i < 4; i++) {
            rho(i, i) = e[i] / sum;
        }
        for (int i = 0; i < 4; i++) {
            for (int j = i + 1; j < 4; j++) {
                double bound = std::sqrt(rho(i, i).real() * rho(j, j).real());
                double v = bound * (2 * rng.uniform() - 1);
                rho(i, j) = rho(j, i) = v;
                box *= 2 * bound;
            }
        }
        if (min_eigenvalue(rho) < 0) {
            continue;
        }
        accepted++;
        auto p = probabilities_from_reconstruction(rho);
        double w = box / std::max(q_bounds(p).width(), 1e-9);
        double f = w * p(1, 1) * p(1, 1);
        on += f;
        od += w;
        on2 += f * f;
        od2 += w * w;
        ocross += f * w;
    }
    double oracle = on / od;
    // Delta-method variance of the ratio estimator.
    double n = static_cast<double>(300000);
    double mf = on / n, mw = od / n;
    double vf = on2 / n - mf * mf, vw = od2 / n - mw * mw, cfw = ocross / n - mf * mw;
    double ratio_var = (vf - 2 * oracle * cfw + oracle * oracle * vw) / (mw * mw * n);
    double oracle_se = std::sqrt(ratio_var);
    EXPECT_GT(accepted, 1000);
    double combined = std::sqrt(hmc_se * hmc_se + oracle_se * oracle_se);
    EXPECT_LT(std::abs(hmc - oracle), 3 * combined) << hmc << " vs " << oracle << " se " << combined;

    // Prior-sample CHSH statistics are recorded for regression, not asserted.
    auto summary = chsh_sample_summary(s);
    RecordProperty("prior_fraction_s2_above_1", std::to_string(summary.fraction_s2_above_1));
    RecordProperty("prior_median_s", std::to_string(summary.median));
}
