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

// Scalar-generic polynomial kernels behind polynomial.h. Instantiated for
// double and, in the two-qubit quartic check, for quad precision.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qhmc::detail {

template <class T>
T abs_of(const T &v) {
    return v < 0 ? T(-v) : v;
}

template <class T>
T poly_value(const std::vector<T> &c, const T &x) {
    T v = 0;
    for (size_t k = c.size(); k-- > 0;) {
        v = v * x + c[k];
    }
    return v;
}

template <class T>
std::vector<T> poly_derivative(const std::vector<T> &c) {
    std::vector<T> d;
    for (size_t k = 1; k < c.size(); k++) {
        d.push_back(c[k] * T(static_cast<double>(k)));
    }
    return d;
}

/// Gauss-Jordan solve of the Vandermonde system.
template <class T>
std::vector<T> interpolate(const std::vector<T> &xs, const std::vector<T> &ys) {
    size_t n = xs.size();
    if (ys.size() != n || n == 0) {
        throw std::invalid_argument("interpolation needs matching, non-empty point lists");
    }
    size_t w = n + 1;
    std::vector<T> a(n * w);
    for (size_t r = 0; r < n; r++) {
        T power = 1;
        for (size_t c = 0; c < n; c++) {
            a[r * w + c] = power;
            power *= xs[r];
        }
        a[r * w + n] = ys[r];
    }
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (abs_of(a[r * w + col]) > abs_of(a[pivot * w + col])) {
                pivot = r;
            }
        }
        if (a[pivot * w + col] == 0) {
            throw std::invalid_argument("interpolation nodes must be distinct");
        }
        for (size_t c = 0; c <= n; c++) {
            std::swap(a[col * w + c], a[pivot * w + c]);
        }
        for (size_t r = 0; r < n; r++) {
            if (r == col) {
                continue;
            }
            T f = a[r * w + col] / a[col * w + col];
            for (size_t c = col; c <= n; c++) {
                a[r * w + c] -= f * a[col * w + c];
            }
        }
    }
    std::vector<T> coeffs(n);
    for (size_t r = 0; r < n; r++) {
        coeffs[r] = a[r * w + n] / a[r * w + r];
    }
    return coeffs;
}

/// Real roots by the critical-point recursion; `zero_tol` is the relative
/// size below which a value counts as zero at a critical point.
template <class T>
std::vector<T> roots(std::vector<T> c, const T &zero_tol) {
    while (!c.empty() && c.back() == 0) {
        c.pop_back();
    }
    if (c.size() <= 1) {
        return {};
    }
    if (c.size() == 2) {
        return {T(-c[0] / c[1])};
    }
    T bound = 0;
    for (size_t k = 0; k + 1 < c.size(); k++) {
        bound = std::max(bound, T(abs_of(T(c[k] / c.back()))));
    }
    bound += 1;

    auto critical = roots(poly_derivative(c), zero_tol);
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    std::vector<T> knots;
    knots.push_back(-bound);
    for (const T &x : critical) {
        if (x > -bound && x < bound) {
            knots.push_back(x);
        }
    }
    knots.push_back(bound);

    auto sign_of = [](const T &v) { return (v > 0) - (v < 0); };
    auto signed_value = [&](const T &x) {
        T v = poly_value(c, x);
        // Rounding scale of the evaluation: sum |c_k| |x|^k.
        T scale = 0;
        T power = 1;
        for (const T &ck : c) {
            scale += abs_of(ck) * power;
            power *= abs_of(x);
        }
        return abs_of(v) <= zero_tol * scale ? 0 : sign_of(v);
    };

    std::vector<T> out;
    for (size_t i = 1; i + 1 < knots.size(); i++) {
        if (signed_value(knots[i]) == 0) {
            // Zero at a critical point; a sign change across it means an odd
            // (triple) root, otherwise an even one.
            bool crosses = signed_value(knots[i - 1]) * signed_value(knots[i + 1]) < 0;
            out.insert(out.end(), crosses ? 3 : 2, knots[i]);
        }
    }
    for (size_t i = 0; i + 1 < knots.size(); i++) {
        T a = knots[i];
        T b = knots[i + 1];
        int sa = signed_value(a);
        int sb = signed_value(b);
        if (sa * sb >= 0) {
            continue;
        }
        for (int iter = 0; iter < 400 && b > a; iter++) {
            T m = (a + b) / 2;
            if (m <= a || m >= b) {
                break;
            }
            int sm = sign_of(poly_value(c, m));
            if (sm == 0) {
                a = b = m;
                break;
            }
            if (sm == sa) {
                a = m;
            } else {
                b = m;
            }
        }
        out.push_back((a + b) / 2);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qhmc::detail
