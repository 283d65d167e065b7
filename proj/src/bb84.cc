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
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "qhmc/errors.h"
#include "qhmc/parameterization.h"
#include "polynomial_impl.h"
#include "qhmc/polynomial.h"

namespace qhmc {

namespace {

constexpr double kNonnegativeTol = 1e-12;
constexpr double kConstraintTol = 1e-10;
constexpr double kInfeasibleThreshold = -1e-6;
constexpr double kDegenerateWidth = 1e-9;
constexpr double kDegenerateWeight = 1e9;

using Real4 = std::array<double, 16>;

/// Single-qubit crosshair effects in the reconstruction basis, where +-x
/// become +-z and +-y become +-x: (1 + z)/4, (1 + x)/4, (1 - z)/4, (1 - x)/4.
std::array<std::array<double, 4>, 4> reconstruction_effects() {
    return {{
        {0.5, 0, 0, 0},
        {0.25, 0.25, 0.25, 0.25},
        {0, 0, 0, 0.5},
        {0.25, -0.25, -0.25, 0.25},
    }};
}

/// E_jk as real 4x4 arrays; the first qubit is the fast index.
const std::array<Real4, 16> &effects() {
    static const std::array<Real4, 16> table = [] {
        auto single = reconstruction_effects();
        std::array<Real4, 16> out{};
        for (int j = 0; j < 4; j++) {
            for (int k = 0; k < 4; k++) {
                Real4 &e = out[j * 4 + k];
                for (int b = 0; b < 2; b++) {
                    for (int b2 = 0; b2 < 2; b2++) {
                        for (int a = 0; a < 2; a++) {
                            for (int a2 = 0; a2 < 2; a2++) {
                                e[(a + 2 * b) * 4 + (a2 + 2 * b2)] = single[k][b * 2 + b2] * single[j][a * 2 + a2];
                            }
                        }
                    }
                }
            }
        }
        return out;
    }();
    return table;
}

std::array<double, 16> probabilities_of(const Real4 &rho) {
    std::array<double, 16> p{};
    const auto &table = effects();
    for (size_t jk = 0; jk < 16; jk++) {
        double s = 0;
        for (size_t i = 0; i < 16; i++) {
            // E is symmetric, so tr{rho E} is the entrywise product sum.
            s += rho[i] * table[jk][i];
        }
        p[jk] = s;
    }
    return p;
}

double q_of(const Real4 &rho) {
    return 2 * (rho[1 * 4 + 2] - rho[0 * 4 + 3]);
}

Real4 real_part(const ComplexMatrix &m) {
    if (m.dim() != 4) {
        throw BadDimension("two-qubit matrices are 4x4");
    }
    Real4 out{};
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            out[r * 4 + c] = m(r, c).real();
        }
    }
    return out;
}

/// Position in the upper-triangular factor of each spherical coordinate,
/// following the column-by-column layout of build_factor.
constexpr std::array<std::pair<int, int>, 10> kFactorLayout = {{
    {0, 0},
    {0, 1},
    {1, 1},
    {0, 2},
    {1, 2},
    {2, 2},
    {0, 3},
    {1, 3},
    {2, 3},
    {3, 3},
}};

Real4 factor_from_coordinates(const std::array<double, 10> &c) {
    Real4 a{};
    for (size_t i = 0; i < 10; i++) {
        a[kFactorLayout[i].first * 4 + kFactorLayout[i].second] = c[i];
    }
    return a;
}

/// a^T b for 4x4 arrays.
Real4 transpose_times(const Real4 &a, const Real4 &b) {
    Real4 out{};
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double s = 0;
            for (size_t i = 0; i < 4; i++) {
                s += a[i * 4 + r] * b[i * 4 + c];
            }
            out[r * 4 + c] = s;
        }
    }
    return out;
}

std::array<double, 10> cartesian_of(std::span<const double> theta) {
    auto v = spherical_cartesian(theta);
    std::array<double, 10> c{};
    std::copy(v.begin(), v.end(), c.begin());
    return c;
}

void require_nine(std::span<const double> theta) {
    if (theta.size() != 9) {
        throw BadDimension("the two-qubit reconstruction family has 9 angles, got " + std::to_string(theta.size()));
    }
}

Real4 real_density(std::span<const double> theta) {
    auto a = factor_from_coordinates(cartesian_of(theta));
    return transpose_times(a, a);
}

/// Sampling coordinates as linear functions of the reconstruction matrix.
std::array<double, 9> coordinates_of(const Real4 &rho) {
    auto at = [&](int r, int c) { return rho[(r - 1) * 4 + (c - 1)]; };
    return {
        at(1, 1) / 4,
        at(2, 2) / 4,
        at(3, 3) / 4,
        at(1, 2) / 2,
        at(1, 3) / 2,
        at(2, 4) / 2,
        at(3, 4) / 2,
        (at(1, 4) + at(2, 3)) / 2,
        2 * (at(2, 3) - at(1, 4)),
    };
}

double log_jacobian(std::span<const double> theta) {
    std::array<double, 9> sines{};
    std::array<double, 9> cosines{};
    for (size_t s = 0; s < 9; s++) {
        sines[s] = std::sin(theta[s]);
        cosines[s] = std::cos(theta[s]);
    }
    auto c = cartesian_of(theta);
    auto a = factor_from_coordinates(c);

    std::vector<double> jac(81);
    for (size_t s = 0; s < 9; s++) {
        // d c_i / d theta_s: c_i = sin_0 ... sin_{i-1} cos_i (last: all sines).
        std::array<double, 10> dc{};
        for (size_t i = s; i < 10; i++) {
            double v = 1;
            for (size_t l = 0; l < i && l < 9; l++) {
                v *= l == s ? cosines[l] : sines[l];
            }
            if (i < 9) {
                v *= i == s ? -sines[i] : cosines[i];
            }
            dc[i] = v;
        }
        auto da = factor_from_coordinates(dc);
        auto left = transpose_times(da, a);
        Real4 drho{};
        for (size_t r = 0; r < 4; r++) {
            for (size_t col = 0; col < 4; col++) {
                drho[r * 4 + col] = left[r * 4 + col] + left[col * 4 + r];
            }
        }
        auto column = coordinates_of(drho);
        for (size_t r = 0; r < 9; r++) {
            jac[r * 9 + s] = column[r];
        }
    }
    double det = std::abs(real_determinant(jac, 9));
    return det > 0 ? std::log(det) : -std::numeric_limits<double>::infinity();
}

const ComplexMatrix &single_rotation() {
    static const ComplexMatrix u = [] {
        double h = 1 / std::sqrt(2.0);
        return ComplexMatrix::from_rows({
            {Complex(h, 0), Complex(0, -h)},
            {Complex(h, 0), Complex(0, h)},
        });
    }();
    return u;
}

/// W with rho_standard = W rho_reconstruction W^dagger.
const ComplexMatrix &basis_change() {
    static const ComplexMatrix w = [] {
        ComplexMatrix swap(4);
        swap(0, 0) = 1;
        swap(1, 2) = 1;
        swap(2, 1) = 1;
        swap(3, 3) = 1;
        return swap * kron(single_rotation(), single_rotation());
    }();
    return w;
}

double min_eigenvalue_at(const ComplexMatrix &rho0, double q) {
    return min_eigenvalue(rho0 + (q / 4) * sigma_matrix());
}

}  // namespace

Bb84Probabilities Bb84Probabilities::from_span(std::span<const double> p) {
    if (p.size() != 16) {
        throw BadDimension("bb84 probabilities need 16 entries, got " + std::to_string(p.size()));
    }
    Bb84Probabilities out;
    std::copy(p.begin(), p.end(), out.values.begin());
    return out;
}

Bb84Probabilities Bb84Probabilities::uniform() {
    Bb84Probabilities out;
    out.values.fill(1.0 / 16);
    return out;
}

double Bb84Probabilities::p_even() const {
    const auto &p = *this;
    return p(2, 2) - p(2, 4) - p(4, 2) + p(4, 4);
}

bool satisfies_basic_constraints(const Bb84Probabilities &p) {
    double total = 0;
    for (double v : p.values) {
        if (!std::isfinite(v) || v < -kNonnegativeTol) {
            return false;
        }
        total += v;
    }
    if (std::abs(total - 1) > kConstraintTol) {
        return false;
    }
    for (int i = 1; i <= 4; i++) {
        double column = p(1, i) + p(3, i) - p(2, i) - p(4, i);
        double row = p(i, 1) + p(i, 3) - p(i, 2) - p(i, 4);
        if (std::abs(column) > kConstraintTol || std::abs(row) > kConstraintTol) {
            return false;
        }
    }
    return true;
}

const ComplexMatrix &sigma_matrix() {
    static const ComplexMatrix sigma = ComplexMatrix::from_rows({
        {0, 0, 0, -1},
        {0, 0, 1, 0},
        {0, 1, 0, 0},
        {-1, 0, 0, 0},
    });
    return sigma;
}

ComplexMatrix rho0_from_probs(const Bb84Probabilities &p) {
    if (!satisfies_basic_constraints(p)) {
        throw ConstraintViolation("bb84 probabilities violate the basic constraints");
    }
    double even = p.p_even();
    double r12 = 2 * (p(2, 1) - p(4, 1));
    double r13 = 2 * (p(1, 2) - p(1, 4));
    double r24 = 2 * (p(3, 2) - p(3, 4));
    double r34 = 2 * (p(2, 3) - p(4, 3));
    return ComplexMatrix::from_rows({
        {4 * p(1, 1), r12, r13, even},
        {r12, 4 * p(3, 1), even, r24},
        {r13, even, 4 * p(1, 3), r34},
        {even, r24, r34, 4 * p(3, 3)},
    });
}

ComplexMatrix rho_of_q(const Bb84Probabilities &p, double q) {
    return rho0_from_probs(p) + (q / 4) * sigma_matrix();
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

Quad quad_determinant(std::array<Quad, 16> a) {
    Quad det = 1;
    for (size_t col = 0; col < 4; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < 4; r++) {
            if (detail::abs_of(a[r * 4 + col]) > detail::abs_of(a[pivot * 4 + col])) {
                pivot = r;
            }
        }
        if (a[pivot * 4 + col] == 0) {
            return 0;
        }
        if (pivot != col) {
            for (size_t c = 0; c < 4; c++) {
                std::swap(a[col * 4 + c], a[pivot * 4 + c]);
            }
            det = -det;
        }
        det *= a[col * 4 + col];
        for (size_t r = col + 1; r < 4; r++) {
            Quad f = a[r * 4 + col] / a[col * 4 + col];
            for (size_t c = col; c < 4; c++) {
                a[r * 4 + c] -= f * a[col * 4 + c];
            }
        }
    }
    return det;
}

/// Coefficients of det rho(q) in quad precision. Roots of the quartic can
/// nearly collide, and resolving them needs more digits than double.
std::vector<Quad> quad_quartic(const Bb84Probabilities &p) {
    auto rho0 = rho0_from_probs(p);
    const auto &sigma = sigma_matrix();
    std::vector<Quad> xs = {-2, -1, 0, 1, 2};
    std::vector<Quad> ys;
    for (const Quad &q : xs) {
        std::array<Quad, 16> m;
        for (size_t r = 0; r < 4; r++) {
            for (size_t c = 0; c < 4; c++) {
                m[r * 4 + c] = Quad(rho0(r, c).real()) + q / 4 * Quad(sigma(r, c).real());
            }
        }
        ys.push_back(quad_determinant(m));
    }
    return detail::interpolate(xs, ys);
}

}  // namespace

std::array<double, 5> det_quartic(const Bb84Probabilities &p) {
    auto c = quad_quartic(p);
    return {
        static_cast<double>(c[0]), static_cast<double>(c[1]), static_cast<double>(c[2]), static_cast<double>(c[3]),
        static_cast<double>(c[4])};
}

std::array<double, 5> det_quartic_closed_form(const Bb84Probabilities &p) {
    auto rho0 = rho0_from_probs(p);
    auto m = rho0 * sigma_matrix();
    auto rho0_sq = rho0 * rho0;
    auto linear = ((rho0_sq - rho0_sq * rho0) * sigma_matrix()).trace().real();
    return {
        determinant(rho0).real(),
        linear / 4,
        -0.5 * (m * m).trace().real() / 16,
        0,
        1.0 / 256,
    };
}

std::array<double, 5> det_quartic_traces(const Bb84Probabilities &p) {
    auto rho0 = rho0_from_probs(p);
    auto m = sigma_matrix() * rho0;
    auto m2 = m * m;
    return {
        determinant(rho0).real(),
        (m2 * m).trace().real() / 3 / 4,
        -0.5 * m2.trace().real() / 16,
        -m.trace().real() / 64,
        1.0 / 256,
    };
}

QInterval q_bounds(const Bb84Probabilities &p) {
    auto rho0 = rho0_from_probs(p);
    auto g = [&](double q) { return min_eigenvalue_at(rho0, q); };

    // Golden-section search for the maximum of the concave g on [-1, 1].
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    double lo = -1;
    double hi = 1;
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    while (hi - lo > 1e-11) {
        if (g1 < g2) {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = g(x1);
        }
    }
    double q_star = 0.5 * (lo + hi);
    double g_star = g(q_star);
    for (double end : {-1.0, 1.0}) {
        double g_end = g(end);
        if (g_end > g_star) {
            q_star = end;
            g_star = g_end;
        }
    }
    if (g_star < kInfeasibleThreshold) {
        throw NotPhysical("no q in [-1, 1] makes the state positive (best eigenvalue " + std::to_string(g_star) + ")");
    }
    if (g_star < 0) {
        // Feasible only within rounding: the interval has collapsed.
        return {q_star, q_star};
    }

    auto crossing = [&](double inside, double outside) {
        if (g(outside) >= 0) {
            return outside;
        }
        for (int iter = 0; iter < 200 && std::abs(outside - inside) > 1e-14; iter++) {
            double mid = 0.5 * (inside + outside);
            if (g(mid) >= 0) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        return inside;
    };
    return {crossing(q_star, -1.0), crossing(q_star, 1.0)};
}

QInterval q_bounds_from_quartic(const Bb84Probabilities &p) {
    auto roots = detail::roots(quad_quartic(p), Quad(1e-30));
    if (roots.size() != 4) {
        throw NotPhysical("the determinant quartic has " + std::to_string(roots.size()) + " real roots");
    }
    return {std::clamp(static_cast<double>(roots[1]), -1.0, 1.0), std::clamp(static_cast<double>(roots[2]), -1.0, 1.0)};
}

bool physicality_check(const Bb84Probabilities &p) {
    if (!satisfies_basic_constraints(p)) {
        return false;
    }
    try {
        q_bounds(p);
        return true;
    } catch (const NotPhysical &) {
        return false;
    }
}

Bb84Probabilities probabilities_from_reconstruction(const ComplexMatrix &rho) {
    Bb84Probabilities out;
    out.values = probabilities_of(real_part(rho));
    return out;
}

double q_from_reconstruction(const ComplexMatrix &rho) {
    return q_of(real_part(rho));
}

ComplexMatrix nine_angle_density(std::span<const double> theta) {
    require_nine(theta);
    std::vector<double> full(15, 0.0);
    std::copy(theta.begin(), theta.end(), full.begin());
    return density_from_angles(full, 4);
}

NineAnglePoint nine_angle_map(std::span<const double> theta) {
    auto rho = nine_angle_density(theta);
    return {probabilities_from_reconstruction(rho), q_from_reconstruction(rho)};
}

std::array<double, 9> bb84_coordinates(const Bb84Probabilities &p, double q) {
    return {
        p(1, 1),
        p(3, 1),
        p(1, 3),
        p(2, 1) - p(4, 1),
        p(1, 2) - p(1, 4),
        p(3, 2) - p(3, 4),
        p(2, 3) - p(4, 3),
        p.p_even(),
        q,
    };
}

double nine_angle_jacobian(std::span<const double> theta) {
    require_nine(theta);
    return std::exp(log_jacobian(theta));
}

double nine_angle_jacobian_numeric(std::span<const double> theta) {
    require_nine(theta);
    CoordinateMap map = [](std::span<const double> t) {
        auto point = nine_angle_map(t);
        auto c = bb84_coordinates(point.p, point.q);
        return std::vector<double>(c.begin(), c.end());
    };
    auto jac = finite_difference_jacobian(map, theta);
    return std::abs(real_determinant(jac, 9));
}

TargetDensity bb84_target(CountData counts) {
    if (counts.size() != 16) {
        throw ConfigError("bb84 data need 16 counts, got " + std::to_string(counts.size()));
    }
    validate_counts(counts);
    TargetDensity t;
    t.dim = 9;
    t.label = "bb84-double-crosshair";
    t.log_w = [counts](std::span<const double> theta) {
        require_nine(theta);
        double total = log_jacobian(theta);
        if (!std::isfinite(total)) {
            return total;
        }
        auto p = probabilities_of(real_density(theta));
        for (size_t i = 0; i < 16; i++) {
            if (counts[i] == 0) {
                continue;
            }
            if (!(p[i] > 0)) {
                return -std::numeric_limits<double>::infinity();
            }
            total += counts[i] * std::log(p[i]);
        }
        return total;
    };
    t.force = finite_difference_force(t.log_w, 9);
    t.probabilities = [](std::span<const double> theta) {
        require_nine(theta);
        auto p = probabilities_of(real_density(theta));
        return std::vector<double>(p.begin(), p.end());
    };
    t.auxiliary = [](std::span<const double> theta) {
        require_nine(theta);
        return std::vector<double>{q_of(real_density(theta))};
    };
    return t;
}

SampleSet reweight_marginal(SampleSet samples) {
    samples.weights.assign(samples.size(), 0.0);
    size_t degenerate = 0;
    for (size_t i = 0; i < samples.size(); i++) {
        if (samples.derived_probs.size() <= i) {
            throw BadDimension("reweighting needs the 16 probabilities of every point");
        }
        auto interval = q_bounds(Bb84Probabilities::from_span(samples.derived_probs[i]));
        if (interval.width() < kDegenerateWidth) {
            samples.weights[i] = kDegenerateWeight;
            degenerate++;
        } else {
            samples.weights[i] = 1 / interval.width();
        }
    }
    samples.metadata.degenerate_weights += degenerate;
    return samples;
}

ComplexMatrix two_qubit_state(std::string_view name, double noise) {
    if (!(noise >= 0 && noise <= 1)) {
        throw ConfigError("noise must lie in [0, 1]");
    }
    ComplexMatrix rho(4);
    double h = 0.5;
    if (name == "singlet" || name == "triplet") {
        double sign = name == "singlet" ? -1 : 1;
        rho(1, 1) = h;
        rho(2, 2) = h;
        rho(1, 2) = sign * h;
        rho(2, 1) = sign * h;
    } else if (name == "mixed") {
        rho = ComplexMatrix::identity(4) * Complex(0.25);
    } else {
        throw ConfigError("unknown two-qubit state '" + std::string(name) + "'");
    }
    return rho * Complex(1 - noise) + ComplexMatrix::identity(4) * Complex(noise / 4);
}

Bb84Probabilities bb84_probabilities(const ComplexMatrix &rho_standard) {
    if (rho_standard.dim() != 4) {
        throw BadDimension("two-qubit matrices are 4x4");
    }
    auto id = ComplexMatrix::identity(2);
    // Outcomes 1..4 are +x, +y, -x, -y.
    std::array<ComplexMatrix, 4> single = {
        (id + pauli_x()) * Complex(0.25),
        (id + pauli_y()) * Complex(0.25),
        (id - pauli_x()) * Complex(0.25),
        (id - pauli_y()) * Complex(0.25),
    };
    Bb84Probabilities out;
    for (int j = 0; j < 4; j++) {
        for (int k = 0; k < 4; k++) {
            out.values[j * 4 + k] = (rho_standard * kron(single[j], single[k])).trace().real();
        }
    }
    return out;
}

ComplexMatrix reconstruction_to_standard(const ComplexMatrix &rho) {
    const auto &w = basis_change();
    return w * rho * w.adjoint();
}

ComplexMatrix standard_to_reconstruction(const ComplexMatrix &rho) {
    const auto &w = basis_change();
    return w.adjoint() * rho * w;
}

}  // namespace qhmc
