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

#include "qhmc/polynomial.h"

#include "polynomial_impl.h"

namespace qhmc {

double polynomial_value(std::span<const double> coeffs, double x) {
    return detail::poly_value(std::vector<double>(coeffs.begin(), coeffs.end()), x);
}

std::vector<double> polynomial_derivative(std::span<const double> coeffs) {
    return detail::poly_derivative(std::vector<double>(coeffs.begin(), coeffs.end()));
}

std::vector<double> interpolate_polynomial(std::span<const double> xs, std::span<const double> ys) {
    return detail::interpolate(std::vector<double>(xs.begin(), xs.end()), std::vector<double>(ys.begin(), ys.end()));
}

std::vector<double> real_roots(std::span<const double> coeffs) {
    return detail::roots(std::vector<double>(coeffs.begin(), coeffs.end()), 1e-14);
}

}  // namespace qhmc
