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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qhmc/matrix.h"

namespace qhmc {

/// Angles parameterizing a d-level state; there are d*d - 1 of them. The
/// first (d+2)(d-1)/2 are hyperspherical angles for the moduli of the
/// triangular factor, the rest are phases of its off-diagonal entries.
///
/// Angles are unconstrained reals; everything built from them is 2*pi
/// periodic in each component.
using AngleVector = std::vector<double>;

constexpr size_t angle_count(size_t dim) {
    return dim * dim - 1;
}

constexpr size_t modulus_angle_count(size_t dim) {
    return (dim + 2) * (dim - 1) / 2;
}

/// Recovers d from an angle count, throwing BadDimension if count + 1 is not
/// a perfect square greater than 1.
size_t dimension_for_angle_count(size_t count);

/// (C_1, ..., C_n, S_n) with C_1 = cos a_1, S_1 = sin a_1,
/// C_k = S_{k-1} cos a_k, S_k = S_{k-1} sin a_k.
std::vector<double> spherical_cartesian(std::span<const double> angles);

/// Upper-triangular A with real diagonal and unit Frobenius norm, so that
/// rho = A^dagger A is a density matrix.
struct TriangularFactor {
    ComplexMatrix matrix;
};

TriangularFactor build_factor(std::span<const double> theta, size_t dim);

/// rho = A^dagger A without the (eigenvalue-based) invariant check.
ComplexMatrix density_from_angles(std::span<const double> theta, size_t dim);

DensityMatrix build_density(std::span<const double> theta, size_t dim);

struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm_squared() const {
        return x * x + y * y + z * z;
    }
};

/// Pauli expectation values of the qubit state with angles (t1, t2, t3).
BlochVector bloch_from_angles(std::span<const double> theta);

/// (tr rho sx, tr rho sy, tr rho sz) for a 2x2 matrix.
BlochVector bloch_from_density(const ComplexMatrix &rho);

/// Inverse of bloch_from_angles on t1, t2 in [0, pi/2], t3 in (-pi, pi].
AngleVector angles_from_bloch(const BlochVector &b);

/// |sin(2 t1)^3 sin(2 t2)|: volume element dx dy dz in angle coordinates.
double jacobian_qubit_full(double theta1, double theta2);

/// |sin(2 t2)|: dx dy on the equatorial disk with t1 = pi/4.
double jacobian_equatorial(double theta2);

/// |sin(4 t1)|: dx dy on the upper hemisphere with t2 = 0.
double jacobian_hemisphere(double theta1);

using CoordinateMap = std::function<std::vector<double>(std::span<const double>)>;

/// Central-difference Jacobian matrix (row-major, outputs x inputs). The
/// step for coordinate s is `step` if given, else 1e-6 * (1 + |theta_s|).
std::vector<double> finite_difference_jacobian(
    const CoordinateMap &map, std::span<const double> theta, std::optional<double> step = std::nullopt);

/// |det| of the square finite-difference Jacobian of `map` at theta. Throws
/// SingularMap if it is below 1e-14 and BadDimension if the map does not
/// produce exactly theta.size() outputs.
double numeric_jacobian(
    const CoordinateMap &map, std::span<const double> theta, std::optional<double> step = std::nullopt);

}  // namespace qhmc
