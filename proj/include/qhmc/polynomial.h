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

#include <span>
#include <vector>

namespace qhmc {

/// Coefficients are in ascending order: c[0] + c[1] x + ...
double polynomial_value(std::span<const double> coeffs, double x);

std::vector<double> polynomial_derivative(std::span<const double> coeffs);

/// Coefficients of the degree n polynomial through (xs[i], ys[i]), n + 1
/// points, by Gaussian elimination on the Vandermonde system.
std::vector<double> interpolate_polynomial(std::span<const double> xs, std::span<const double> ys);

/// Real roots, ascending, with multiplicity two reported for tangential
/// (even-order) roots.
///
/// Works degree by degree: the critical points (real roots of the
/// derivative) split the line into monotone pieces, each holding at most one
/// simple root, found by bisection. A critical point where the polynomial is
/// zero to within rounding is a double root.
std::vector<double> real_roots(std::span<const double> coeffs);

}  // namespace qhmc
