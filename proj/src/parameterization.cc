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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qhmc/errors.h"

namespace qhmc {

size_t dimension_for_angle_count(size_t count) {
    auto d = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(count + 1))));
    if (d < 2 || d * d != count + 1) {
        throw BadDimension(std::to_string(count) + " angles do not parameterize any d-level state");
    }
    return d;
}

std::vector<double> spherical_cartesian(std::span<const double> angles) {
    std::vector<double> out(angles.size() + 1);
    double s = 1;
    for (size_t k = 0; k < angles.size(); k++) {
        out[k] = s * std::cos(angles[k]);
        s *= std::sin(angles[k]);
    }
    out[angles.size()] = s;
    return out;
}

TriangularFactor build_factor(std::span<const double> theta, size_t dim) {
    if (dim < 1 || theta.size() != angle_count(dim)) {
        throw BadDimension(
            "dimension " + std::to_string(dim) + " needs " + std::to_string(angle_count(dim)) + " angles, got " +
            std::to_string(theta.size()));
    }
    size_t n_sph = modulus_angle_count(dim);
    auto cart = spherical_cartesian(theta.subspan(0, n_sph));
    // 1-based helpers so the index arithmetic reads like the layout rule.
    auto coord = [&](size_t k) { return cart[k - 1]; };
    auto phase = [&](size_t k) { return std::polar(1.0, -theta[k - 1]); };

    ComplexMatrix a(dim);
    for (size_t k = 1; k <= dim; k++) {
        for (size_t j = 1; j <= k; j++) {
            if (j == k) {
                a(j - 1, k - 1) = k < dim ? coord(k * (k + 1) / 2) : cart[n_sph];
            } else {
                size_t m = k * (k - 1) / 2 + j;
                size_t n = n_sph - (k - 1);
                a(j - 1, k - 1) = coord(m) * phase(m + n);
            }
        }
    }
    return TriangularFactor{std::move(a)};
}

ComplexMatrix density_from_angles(std::span<const double> theta, size_t dim) {
    auto a = build_factor(theta, dim).matrix;
    return a.adjoint() * a;
}

DensityMatrix build_density(std::span<const double> theta, size_t dim) {
    return DensityMatrix(density_from_angles(theta, dim));
}

BlochVector bloch_from_angles(std::span<const double> theta) {
    if (theta.size() != 3) {
        throw BadDimension("qubit Bloch vector needs exactly 3 angles");
    }
    double r = std::sin(2 * theta[0]) * std::cos(theta[1]);
    return {r * std::cos(theta[2]), r * std::sin(theta[2]), std::cos(2 * theta[0])};
}

BlochVector bloch_from_density(const ComplexMatrix &rho) {
    if (rho.dim() != 2) {
        throw BadDimension("Bloch vector needs a 2x2 matrix");
    }
    return {
        (rho * pauli_x()).trace().real(),
        (rho * pauli_y()).trace().real(),
        (rho * pauli_z()).trace().real(),
    };
}

AngleVector angles_from_bloch(const BlochVector &b) {
    double t1 = 0.5 * std::acos(std::clamp(b.z, -1.0, 1.0));
    double s = std::sin(2 * t1);
    double r_xy = std::hypot(b.x, b.y);
    double t2 = s > 0 ? std::acos(std::clamp(r_xy / s, 0.0, 1.0)) : 0.0;
    double t3 = std::atan2(b.y, b.x);
    return {t1, t2, t3};
}

double jacobian_qubit_full(double theta1, double theta2) {
    double s = std::sin(2 * theta1);
    return std::abs(s * s * s * std::sin(2 * theta2));
}

double jacobian_equatorial(double theta2) {
    return std::abs(std::sin(2 * theta2));
}

double jacobian_hemisphere(double theta1) {
    return std::abs(std::sin(4 * theta1));
}

std::vector<double> finite_difference_jacobian(
    const CoordinateMap &map, std::span<const double> theta, std::optional<double> step) {
    size_t n_in = theta.size();
    std::vector<double> point(theta.begin(), theta.end());
    std::vector<std::vector<double>> columns(n_in);
    size_t n_out = 0;
    for (size_t s = 0; s < n_in; s++) {
        double h = step.value_or(1e-6 * (1 + std::abs(theta[s])));
        point[s] = theta[s] + h;
        auto plus = map(point);
        point[s] = theta[s] - h;
        auto minus = map(point);
        point[s] = theta[s];
        if (s == 0) {
            n_out = plus.size();
        }
        if (plus.size() != n_out || minus.size() != n_out) {
            throw BadDimension("coordinate map changed its output size");
        }
        columns[s].resize(n_out);
        for (size_t r = 0; r < n_out; r++) {
            columns[s][r] = (plus[r] - minus[r]) / (2 * h);
        }
    }
    std::vector<double> jac(n_out * n_in);
    for (size_t r = 0; r < n_out; r++) {
        for (size_t s = 0; s < n_in; s++) {
            jac[r * n_in + s] = columns[s][r];
        }
    }
    return jac;
}

double numeric_jacobian(const CoordinateMap &map, std::span<const double> theta, std::optional<double> step) {
    auto jac = finite_difference_jacobian(map, theta, step);
    if (jac.size() != theta.size() * theta.size()) {
        throw BadDimension("numeric_jacobian needs a map with as many outputs as inputs");
    }
    double det = std::abs(real_determinant(jac, theta.size()));
    if (!(det >= 1e-14)) {
        throw SingularMap("Jacobian determinant " + std::to_string(det) + " is below 1e-14");
    }
    return det;
}

}  // namespace qhmc
