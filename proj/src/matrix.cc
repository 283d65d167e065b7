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

#include "qhmc/matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qhmc/errors.h"

namespace qhmc {

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim), entries_(dim * dim) {
}

ComplexMatrix::ComplexMatrix(size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim * dim) {
        throw BadDimension(
            "ComplexMatrix of dimension " + std::to_string(dim) + " needs " + std::to_string(dim * dim) +
            " entries, got " + std::to_string(entries_.size()));
    }
    for (const auto &z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix entries must be finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    size_t n = rows.size();
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto &row : rows) {
        if (row.size() != n) {
            throw BadDimension("from_rows requires a square matrix");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(n, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t k = 0; k < dim_; k++) {
        t += (*this)(k, k);
    }
    return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw BadDimension("matrix sum of mismatched dimensions");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (other.dim_ != dim_) {
        throw BadDimension("matrix difference of mismatched dimensions");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex factor) {
    for (auto &z : entries_) {
        z *= factor;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw BadDimension("matrix product of mismatched dimensions");
    }
    size_t n = a.dim();
    ComplexMatrix out(n);
    for (size_t r = 0; r < n; r++) {
        for (size_t k = 0; k < n; k++) {
            Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (size_t c = 0; c < n; c++) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(ComplexMatrix a, Complex factor) {
    a *= factor;
    return a;
}

ComplexMatrix operator*(Complex factor, ComplexMatrix a) {
    a *= factor;
    return a;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t na = a.dim();
    size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (size_t r1 = 0; r1 < na; r1++) {
        for (size_t c1 = 0; c1 < na; c1++) {
            for (size_t r2 = 0; r2 < nb; r2++) {
                for (size_t c2 = 0; c2 < nb; c2++) {
                    out(r1 * nb + r2, c1 * nb + c2) = a(r1, c1) * b(r2, c2);
                }
            }
        }
    }
    return out;
}

double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw BadDimension("comparison of mismatched dimensions");
    }
    double worst = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

bool hermitian_check(const ComplexMatrix &m, double tol) {
    size_t n = m.dim();
    for (size_t r = 0; r < n; r++) {
        for (size_t c = r; c < n; c++) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

Complex determinant(const ComplexMatrix &m) {
    size_t n = m.dim();
    std::vector<Complex> a(m.entries().begin(), m.entries().end());
    Complex det = 1;
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        if (a[pivot * n + col] == Complex{}) {
            return 0;
        }
        if (pivot != col) {
            for (size_t c = 0; c < n; c++) {
                std::swap(a[pivot * n + c], a[col * n + c]);
            }
            det = -det;
        }
        Complex p = a[col * n + col];
        det *= p;
        for (size_t r = col + 1; r < n; r++) {
            Complex f = a[r * n + col] / p;
            for (size_t c = col; c < n; c++) {
                a[r * n + c] -= f * a[col * n + c];
            }
        }
    }
    return det;
}

double real_determinant(std::span<const double> entries, size_t n) {
    if (entries.size() != n * n) {
        throw BadDimension("real_determinant: entry count does not match dimension");
    }
    std::vector<double> a(entries.begin(), entries.end());
    double det = 1;
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        if (a[pivot * n + col] == 0) {
            return 0;
        }
        if (pivot != col) {
            for (size_t c = 0; c < n; c++) {
                std::swap(a[pivot * n + c], a[col * n + c]);
            }
            det = -det;
        }
        double p = a[col * n + col];
        det *= p;
        for (size_t r = col + 1; r < n; r++) {
            double f = a[r * n + col] / p;
            for (size_t c = col; c < n; c++) {
                a[r * n + c] -= f * a[col * n + c];
            }
        }
    }
    return det;
}

namespace {

/// Cyclic Jacobi eigenvalue iteration for a real symmetric n x n matrix.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, size_t n) {
    auto at = [&](size_t r, size_t c) -> double & { return a[r * n + c]; };
    for (int sweep = 0; sweep < 100; sweep++) {
        double off = 0;
        double total = 0;
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                total += at(r, c) * at(r, c);
                if (r != c) {
                    off += at(r, c) * at(r, c);
                }
            }
        }
        if (off <= 1e-30 * total || off == 0) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double apq = at(p, q);
                if (apq == 0) {
                    continue;
                }
                double theta = (at(q, q) - at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < n; k++) {
                    double akp = at(k, p);
                    double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    double apk = at(p, k);
                    double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> values(n);
    for (size_t k = 0; k < n; k++) {
        values[k] = at(k, k);
    }
    std::sort(values.begin(), values.end());
    return values;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    if (!hermitian_check(m, 1e-10)) {
        throw NonHermitianInput("eigenvalues requested for a non-hermitian matrix");
    }
    size_t n = m.dim();
    bool real = true;
    for (const auto &z : m.entries()) {
        if (z.imag() != 0) {
            real = false;
            break;
        }
    }
    if (real) {
        std::vector<double> a(n * n);
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                a[r * n + c] = 0.5 * (m(r, c).real() + m(c, r).real());
            }
        }
        return symmetric_eigenvalues(std::move(a), n);
    }
    size_t n2 = 2 * n;
    std::vector<double> a(n2 * n2);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            // Symmetrize so rounding in the input cannot break the embedding.
            Complex h = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a[r * n2 + c] = h.real();
            a[(r + n) * n2 + (c + n)] = h.real();
            a[r * n2 + (c + n)] = -h.imag();
            a[(r + n) * n2 + c] = h.imag();
        }
    }
    auto doubled = symmetric_eigenvalues(std::move(a), n2);
    std::vector<double> values(n);
    for (size_t k = 0; k < n; k++) {
        values[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    }
    return values;
}

double min_eigenvalue(const ComplexMatrix &m) {
    return hermitian_eigenvalues(m).front();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!hermitian_check(matrix_, kHermitianTol)) {
        throw ConstraintViolation("density matrix is not hermitian");
    }
    if (std::abs(matrix_.trace() - Complex{1}) > kTraceTol) {
        throw ConstraintViolation("density matrix does not have unit trace");
    }
    if (min_eigenvalue(matrix_) < -kPositivityTol) {
        throw ConstraintViolation("density matrix has a negative eigenvalue");
    }
}

const ComplexMatrix &pauli_x() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    return m;
}

const ComplexMatrix &pauli_y() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}});
    return m;
}

const ComplexMatrix &pauli_z() {
    static const ComplexMatrix m = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    return m;
}

}  // namespace qhmc
