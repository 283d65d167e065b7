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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qhmc {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// Sizes in this library are tiny (a qubit pair is 4x4), so everything is
/// kept dense and operations return new values.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim);
    /// Throws BadDimension unless entries.size() == dim * dim, and
    /// std::invalid_argument if any entry is not finite.
    ComplexMatrix(size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    size_t dim() const {
        return dim_;
    }
    Complex &operator()(size_t row, size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(size_t row, size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex factor);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex factor);
ComplexMatrix operator*(Complex factor, ComplexMatrix a);

/// Kronecker product; the first factor indexes the slow (outer) position.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest entrywise modulus of a - b.
double max_abs_difference(const ComplexMatrix &a, const ComplexMatrix &b);

/// True iff max |m - m^dagger| <= tol entrywise.
bool hermitian_check(const ComplexMatrix &m, double tol);

/// LU with partial pivoting.
Complex determinant(const ComplexMatrix &m);

/// Determinant of a real n x n row-major matrix.
double real_determinant(std::span<const double> entries, size_t n);

/// All eigenvalues of a hermitian matrix, ascending.
///
/// Uses cyclic Jacobi rotations on the real symmetric 2d x 2d embedding
/// [[Re, -Im], [Im, Re]], whose spectrum is the hermitian one with every
/// eigenvalue doubled. Throws NonHermitianInput if m deviates from its adjoint
/// by more than 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

double min_eigenvalue(const ComplexMatrix &m);

/// Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
   public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPositivityTol = 1e-10;

    /// Throws ConstraintViolation if any invariant fails.
    explicit DensityMatrix(ComplexMatrix m);

    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return matrix_.dim();
    }

   private:
    ComplexMatrix matrix_;
};

/// Pauli matrices in their standard form.
const ComplexMatrix &pauli_x();
const ComplexMatrix &pauli_y();
const ComplexMatrix &pauli_z();

}  // namespace qhmc
