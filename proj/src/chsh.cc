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

#include "qhmc/chsh.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "qhmc/errors.h"
#include "qhmc/random.h"

namespace qhmc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double setting_angle(const ChshSetting &s, int i) {
    switch (i) {
        case 0: return s.phi1;
        case 1: return s.phi2;
        case 2: return s.psi1;
        default: return s.psi2;
    }
}

void set_setting_angle(ChshSetting &s, int i, double v) {
    switch (i) {
        case 0: s.phi1 = v; break;
        case 1: s.phi2 = v; break;
        case 2: s.psi1 = v; break;
        default: s.psi2 = v; break;
    }
}

double pair_correlation(const InPlaneCorrelations &c, double phi, double psi) {
    double ca = std::cos(phi);
    double sa = std::sin(phi);
    double cb = std::cos(psi);
    double sb = std::sin(psi);
    return ca * cb * c[0] + ca * sb * c[1] + sa * cb * c[2] + sa * sb * c[3];
}

}  // namespace

ChshSetting ChshSetting::reference() {
    constexpr double pi = std::numbers::pi;
    return {0, pi / 2, 5 * pi / 4, 3 * pi / 4};
}

ComplexMatrix in_plane_observable(double angle) {
    return pauli_x() * Complex(std::cos(angle)) + pauli_y() * Complex(std::sin(angle));
}

double correlation(const ComplexMatrix &rho, const ComplexMatrix &a, const ComplexMatrix &b) {
    if (rho.dim() != 4 || a.dim() != 2 || b.dim() != 2) {
        throw BadDimension("correlation needs a 4x4 state and two 2x2 observables");
    }
    return (rho * kron(a, b)).trace().real();
}

InPlaneCorrelations in_plane_correlations(const ComplexMatrix &rho) {
    return {
        correlation(rho, pauli_x(), pauli_x()),
        correlation(rho, pauli_x(), pauli_y()),
        correlation(rho, pauli_y(), pauli_x()),
        correlation(rho, pauli_y(), pauli_y()),
    };
}

InPlaneCorrelations in_plane_correlations(const Bb84Probabilities &p) {
    // Outcomes 1, 3 are +-x and 2, 4 are +-y on each side.
    auto pair = [&](int a, int b) { return 4 * (p(a, b) - p(a, b + 2) - p(a + 2, b) + p(a + 2, b + 2)); };
    return {pair(1, 1), pair(1, 2), pair(2, 1), pair(2, 2)};
}

double chsh_value(const InPlaneCorrelations &c, const ChshSetting &s) {
    return pair_correlation(c, s.phi1, s.psi1) + pair_correlation(c, s.phi2, s.psi1) +
           pair_correlation(c, s.phi1, s.psi2) - pair_correlation(c, s.phi2, s.psi2);
}

double chsh_fixed(const ComplexMatrix &rho, const ChshSetting &s) {
    auto a1 = in_plane_observable(s.phi1);
    auto a2 = in_plane_observable(s.phi2);
    auto b1 = in_plane_observable(s.psi1);
    auto b2 = in_plane_observable(s.psi2);
    return correlation(rho, a1, b1) + correlation(rho, a2, b1) + correlation(rho, a1, b2) - correlation(rho, a2, b2);
}

double chsh_from_probs(const Bb84Probabilities &p) {
    double sum = p(1, 2) + p(1, 3) + p(2, 1) + p(2, 3) + p(3, 1) + p(3, 2) - 2 * p(2, 2);
    return 8 * kSqrt2 * sum - 2 * kSqrt2;
}

double chsh_optimized(const InPlaneCorrelations &c) {
    return 2 * std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
}

double chsh_optimized(const ComplexMatrix &rho) {
    return chsh_optimized(in_plane_correlations(rho));
}

ChshMaximum chsh_numerical_maximum(const InPlaneCorrelations &c, uint64_t seed, int starts) {
    constexpr double pi = std::numbers::pi;
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    Rng rng(seed);
    ChshMaximum best{{}, -std::numeric_limits<double>::infinity()};
    for (int start = 0; start < starts; start++) {
        ChshSetting s;
        for (int i = 0; i < 4; i++) {
            set_setting_angle(s, i, 2 * pi * rng.uniform());
        }
        double value = chsh_value(c, s);
        for (int sweep = 0; sweep < 200; sweep++) {
            double before = value;
            for (int i = 0; i < 4; i++) {
                // S is a sinusoid in each single angle, so a golden-section
                // search on a window of width 2 pi around the current value
                // has one interior maximum to find.
                double center = setting_angle(s, i);
                auto f = [&](double v) {
                    ChshSetting t = s;
                    set_setting_angle(t, i, v);
                    return chsh_value(c, t);
                };
                double lo = center - pi;
                double hi = center + pi;
                double x1 = hi - ratio * (hi - lo);
                double x2 = lo + ratio * (hi - lo);
                double f1 = f(x1);
                double f2 = f(x2);
                while (hi - lo > 1e-10) {
                    if (f1 < f2) {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + ratio * (hi - lo);
                        f2 = f(x2);
                    } else {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - ratio * (hi - lo);
                        f1 = f(x1);
                    }
                }
                double candidate = 0.5 * (lo + hi);
                if (f(candidate) > value) {
                    set_setting_angle(s, i, candidate);
                    value = f(candidate);
                }
            }
            if (value - before < 1e-15) {
                break;
            }
        }
        if (value > best.value) {
            best = {s, value};
        }
    }
    return best;
}

ChshSummary chsh_sample_summary(const SampleSet &samples, const ChshSetting &setting, ChshMode mode, size_t bins) {
    ChshSummary out;
    size_t n = samples.size();
    if (samples.derived_probs.size() != n) {
        throw BadDimension("CHSH summaries need the crosshair probabilities of every point");
    }
    out.values.reserve(n);
    out.weights.reserve(n);
    for (size_t i = 0; i < n; i++) {
        auto c = in_plane_correlations(Bb84Probabilities::from_span(samples.derived_probs[i]));
        out.values.push_back(mode == ChshMode::fixed ? chsh_value(c, setting) : chsh_optimized(c));
        out.weights.push_back(samples.weight(i));
    }
    std::vector<double> quarter_squares;
    quarter_squares.reserve(n);
    double total = 0;
    double abs_above = 0;
    double above = 0;
    double s2_above = 0;
    for (size_t i = 0; i < n; i++) {
        double s = out.values[i];
        double w = out.weights[i];
        quarter_squares.push_back(s * s / 4);
        total += w;
        abs_above += std::abs(s) > 2 ? w : 0;
        above += s > 2 ? w : 0;
        s2_above += s * s / 4 > 1 ? w : 0;
    }
    if (n == 0 || !(total > 0)) {
        throw ConfigError("CHSH summary of an empty or zero-weight sample");
    }
    double limit = 2 * kSqrt2 + 1e-9;
    out.s_histogram = weighted_histogram(out.values, out.weights, -limit, limit, bins);
    out.s2_histogram = weighted_histogram(quarter_squares, out.weights, 0, 2 + 1e-9, bins);
    out.mean = weighted_mean(out.values, out.weights);
    out.median = weighted_quantile(out.values, out.weights, 0.5);
    out.q05 = weighted_quantile(out.values, out.weights, 0.05);
    out.q95 = weighted_quantile(out.values, out.weights, 0.95);
    out.fraction_abs_above_2 = abs_above / total;
    out.fraction_above_2 = above / total;
    out.fraction_s2_above_1 = s2_above / total;
    return out;
}

}  // namespace qhmc
