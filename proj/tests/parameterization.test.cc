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

#include "qhmc/parameterization.h"

#include <numbers>

#include "gtest/gtest.h"
#include "qhmc/errors.h"
#include "test_util.h"

using namespace qhmc;

namespace {

constexpr double kPi = std::numbers::pi;

double frobenius_squared(const ComplexMatrix &m) {
    double s = 0;
    for (auto v : m.entries()) {
        s += std::norm(v);
    }
    return s;
}

}  // namespace

TEST(SphericalCartesian, examples) {
    auto a = spherical_cartesian(std::vector<double>{0});
    ASSERT_EQ(a.size(), 2u);
    EXPECT_DOUBLE_EQ(a[0], 1);
    EXPECT_DOUBLE_EQ(a[1], 0);
    auto b = spherical_cartesian(std::vector<double>{kPi / 4, kPi / 2});
    ASSERT_EQ(b.size(), 3u);
    EXPECT_NEAR(b[0], std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(b[1], 0, 1e-15);
    EXPECT_NEAR(b[2], std::sqrt(0.5), 1e-15);
}

TEST(SphericalCartesian, unit_norm) {
    Rng rng(1);
    for (int trial = 0; trial < 100; trial++) {
        auto c = spherical_cartesian(testutil::random_angles(rng, 5));
        ASSERT_EQ(c.size(), 6u);
        double s = 0;
        for (double v : c) {
            s += v * v;
        }
        EXPECT_NEAR(s, 1, 1e-14);
    }
}

TEST(BuildFactor, qubit_examples) {
    auto a = build_factor(std::vector<double>{kPi / 4, kPi / 2, 0.7}, 2).matrix;
    EXPECT_NEAR(std::abs(a(0, 0) - Complex(std::sqrt(0.5))), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 1)), 0, 1e-15);
    EXPECT_EQ(a(1, 0), Complex(0));
    EXPECT_NEAR(std::abs(a(1, 1) - Complex(std::sqrt(0.5))), 0, 1e-15);
    auto rho = density_from_angles(std::vector<double>{kPi / 4, kPi / 2, 0.7}, 2);
    EXPECT_LT(max_abs_difference(rho, ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);

    auto pure = density_from_angles(std::vector<double>{0, 1.3, 2.1}, 2);
    EXPECT_NEAR(pure(0, 0).real(), 1, 1e-15);
    EXPECT_NEAR(bloch_from_density(pure).z, 1, 1e-15);
}

TEST(BuildFactor, qutrit_layout) {
    std::vector<double> theta = {0.3, 0.9, 1.7, 0.4, 2.2, 0.5, -1.1, 2.6};
    auto a = build_factor(theta, 3).matrix;
    auto c = spherical_cartesian(std::span<const double>(theta).subspan(0, 5));
    auto e = [&](int k) { return std::polar(1.0, -theta[k - 1]); };
    EXPECT_NEAR(std::abs(a(0, 0) - c[0]), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 1) - c[1] * e(6)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 1) - c[2]), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 2) - c[3] * e(7)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 2) - c[4] * e(8)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(2, 2) - c[5]), 0, 1e-15);
    for (size_t r = 0; r < 3; r++) {
        for (size_t col = 0; col < r; col++) {
            EXPECT_EQ(a(r, col), Complex(0));
        }
    }
}

TEST(BuildFactor, ququart_layout) {
    Rng rng(2);
    auto theta = testutil::random_angles(rng, 15);
    auto a = build_factor(theta, 4).matrix;
    auto c = spherical_cartesian(std::span<const double>(theta).subspan(0, 9));
    auto e = [&](int k) { return std::polar(1.0, -theta[k - 1]); };
    EXPECT_NEAR(std::abs(a(0, 0) - c[0]), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 1) - c[1] * e(10)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 1) - c[2]), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 2) - c[3] * e(11)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 2) - c[4] * e(12)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(2, 2) - c[5]), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(0, 3) - c[6] * e(13)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(1, 3) - c[7] * e(14)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(2, 3) - c[8] * e(15)), 0, 1e-15);
    EXPECT_NEAR(std::abs(a(3, 3) - c[9]), 0, 1e-15);
}

TEST(BuildFactor, rejects_wrong_length) {
    EXPECT_THROW(build_factor(std::vector<double>(4), 2), BadDimension);
    EXPECT_THROW(build_density(std::vector<double>(7), 3), BadDimension);
    EXPECT_EQ(dimension_for_angle_count(15), 4u);
    EXPECT_THROW(dimension_for_angle_count(5), BadDimension);
}

TEST(BuildFactor, invariants) {
    Rng rng(4);
    for (int trial = 0; trial < 200; trial++) {
        size_t d = 2 + trial % 3;
        auto theta = testutil::random_angles(rng, angle_count(d), -10, 10);
        auto a = build_factor(theta, d).matrix;
        EXPECT_NEAR(frobenius_squared(a), 1, 1e-12);
        for (size_t k = 0; k < d; k++) {
            EXPECT_EQ(a(k, k).imag(), 0);
        }
        auto rho = density_from_angles(theta, d);
        for (size_t s = 0; s < theta.size(); s++) {
            auto shifted = theta;
            shifted[s] += 2 * kPi;
            EXPECT_LT(max_abs_difference(rho, density_from_angles(shifted, d)), 1e-12);
        }
    }
}

TEST(BuildDensity, valid_states) {
    auto mixed = build_density(std::vector<double>{kPi / 4, kPi / 2, 0}, 2);
    EXPECT_LT(max_abs_difference(mixed.matrix(), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
    auto plus_x = build_density(std::vector<double>{kPi / 4, 0, 0}, 2);
    auto b = bloch_from_density(plus_x.matrix());
    EXPECT_NEAR(b.x, 1, 1e-15);
    EXPECT_NEAR(b.y, 0, 1e-15);
    EXPECT_NEAR(b.z, 0, 1e-15);
    Rng rng(6);
    for (int trial = 0; trial < 1000; trial++) {
        auto rho = build_density(testutil::random_angles(rng, 15), 4);
        EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-12);
        EXPECT_GE(min_eigenvalue(rho.matrix()), -1e-10);
    }
}

TEST(Bloch, examples) {
    auto a = bloch_from_angles(std::vector<double>{kPi / 4, 0, 0});
    EXPECT_NEAR(a.x, 1, 1e-15);
    auto b = bloch_from_angles(std::vector<double>{0, 0.3, 2.0});
    EXPECT_NEAR(b.z, 1, 1e-15);
    EXPECT_NEAR(b.x, 0, 1e-15);
    auto c = bloch_from_angles(std::vector<double>{kPi / 4, kPi / 2, 0});
    EXPECT_NEAR(c.norm_squared(), 0, 1e-15);
    EXPECT_THROW(bloch_from_angles(std::vector<double>{1, 2}), BadDimension);
}

TEST(Bloch, matches_pauli_expectations_and_radius_identity) {
    Rng rng(8);
    for (int trial = 0; trial < 200; trial++) {
        auto theta = testutil::random_angles(rng, 3);
        auto b = bloch_from_angles(theta);
        auto from_rho = bloch_from_density(density_from_angles(theta, 2));
        EXPECT_NEAR(b.x, from_rho.x, 1e-12);
        EXPECT_NEAR(b.y, from_rho.y, 1e-12);
        EXPECT_NEAR(b.z, from_rho.z, 1e-12);
        double s = std::sin(2 * theta[0]) * std::sin(theta[1]);
        EXPECT_NEAR(b.norm_squared(), 1 - s * s, 1e-12);
        auto back = bloch_from_angles(angles_from_bloch(b));
        EXPECT_NEAR(back.x, b.x, 1e-9);
        EXPECT_NEAR(back.y, b.y, 1e-9);
        EXPECT_NEAR(back.z, b.z, 1e-9);
    }
}

TEST(Jacobians, closed_forms) {
    EXPECT_NEAR(jacobian_qubit_full(kPi / 4, kPi / 4), 1, 1e-15);
    EXPECT_EQ(jacobian_qubit_full(0, 0.7), 0);
    EXPECT_NEAR(jacobian_qubit_full(kPi / 8, kPi / 4), std::pow(2.0, -1.5), 1e-15);
    EXPECT_NEAR(jacobian_equatorial(kPi / 4), 1, 1e-15);
    EXPECT_EQ(jacobian_equatorial(0), 0);
    EXPECT_NEAR(jacobian_equatorial(kPi / 8), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(jacobian_hemisphere(kPi / 8), 1, 1e-15);
    EXPECT_EQ(jacobian_hemisphere(0), 0);
    EXPECT_NEAR(jacobian_hemisphere(kPi / 16), std::sqrt(0.5), 1e-15);
}

TEST(NumericJacobian, bloch_map_matches_closed_form) {
    CoordinateMap map = [](std::span<const double> t) {
        auto b = bloch_from_angles(t);
        return std::vector<double>{b.x, b.y, b.z};
    };
    std::vector<double> theta = {kPi / 8, kPi / 4, 0.3};
    double j = numeric_jacobian(map, theta, 1e-5);
    EXPECT_NEAR(j / jacobian_qubit_full(theta[0], theta[1]), 1, 1e-6);

    Rng rng(9);
    int checked = 0;
    while (checked < 100) {
        auto t = testutil::random_angles(rng, 3);
        double exact = jacobian_qubit_full(t[0], t[1]);
        if (exact < 1e-3) {
            continue;
        }
        EXPECT_NEAR(numeric_jacobian(map, t) / exact, 1, 1e-6);
        checked++;
    }
}

TEST(NumericJacobian, linear_and_constant_maps) {
    std::vector<double> m = {2, 1, 0, -1, 3, 1, 0.5, 0, 4};
    CoordinateMap linear = [&](std::span<const double> t) {
        std::vector<double> out(3);
        for (size_t r = 0; r < 3; r++) {
            for (size_t c = 0; c < 3; c++) {
                out[r] += m[r * 3 + c] * t[c];
            }
        }
        return out;
    };
    double det = std::abs(real_determinant(m, 3));
    // Central differences are exact for a linear map up to rounding.
    EXPECT_NEAR(numeric_jacobian(linear, std::vector<double>{0.1, 0.2, 0.3}), det, 1e-9 * det);
    CoordinateMap constant = [](std::span<const double>) { return std::vector<double>{1, 2}; };
    EXPECT_THROW(numeric_jacobian(constant, std::vector<double>{0.1, 0.2}), SingularMap);
}
