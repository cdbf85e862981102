// Copyright 2026 The qjump Authors
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

namespace qjump {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major.
///
/// Sized for the operators used here (gates, Hamiltonians and density
/// matrices of a few qubits), so everything is a plain value type.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);
    /// Square matrix from nested rows; throws if rows have unequal lengths.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix zeros(size_t rows, size_t cols);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// |a><b| for column vectors a and b.
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(size_t r, size_t c) { return entries_[r * cols_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return entries_; }
    std::span<Complex> entries() { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    /// Matrix-vector product.
    std::vector<Complex> apply(std::span<const Complex> v) const;

    /// Largest |a_ij - b_ij|; throws on shape mismatch.
    double max_abs_diff(const ComplexMatrix &other) const;
    bool is_hermitian(double tol = 1e-10) const;
    /// U^dagger U = I with max absolute entry deviation <= tol.
    bool is_unitary(double tol = 1e-10) const;

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Kronecker product a (x) b. The row index of the result is i_a * rows(b) + i_b.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

}  // namespace qjump
