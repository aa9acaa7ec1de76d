// Copyright 2026 The tpclone Authors
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

#ifndef TPCLONE_QMATH_H
#define TPCLONE_QMATH_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

/// Small dense complex linear algebra.
///
/// Composite indices are big-endian in layout order: the leftmost subsystem
/// is the most significant digit. Basis vector 0 is |0> (equivalently |H>).
namespace tpclone::qmath {

using Complex = std::complex<double>;

/// Absolute tolerance on Frobenius distance used for approximate equality.
inline constexpr double kTolerance = 1e-10;

/// Row-major dense complex matrix. Immutable once constructed.
class ComplexMatrix {
   public:
    /// rows x cols zero matrix.
    ComplexMatrix(size_t rows, size_t cols);
    /// Throws std::invalid_argument on size mismatch or non-finite entries.
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);
    /// Nested-list literal, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// Column vector from amplitudes.
    static ComplexMatrix column(std::span<const Complex> amplitudes);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Complex &operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return entries_; }

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_;
    size_t cols_;
    std::vector<Complex> entries_;
};

/// One tensor factor of a composite system.
struct SubsystemLabel {
    std::string name;
    size_t dimension = 2;

    bool operator==(const SubsystemLabel &other) const = default;
};

using Layout = std::vector<SubsystemLabel>;

/// Qubit labels for the names given, in order.
Layout qubit_layout(std::initializer_list<const char *> names);
/// Product of dimensions. Throws on duplicate names or zero dimensions.
size_t layout_dimension(const Layout &layout);
/// Throws std::invalid_argument on duplicate names or zero dimensions.
void validate_layout(const Layout &layout);
/// Position of `name` in `layout`; throws if absent.
size_t label_index(const Layout &layout, const std::string &name);
/// `layout` with the named labels removed, order preserved.
Layout remove_labels(const Layout &layout, const std::vector<std::string> &names);

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b);

/// Traces out the `traced` labels of a square matrix laid out as `layout`.
ComplexMatrix partial_trace(const ComplexMatrix &m, const Layout &layout, const std::vector<std::string> &traced);

/// Extends `op` (acting on `op_layout`, a subset of `ambient` in any order)
/// by the identity on every other label of `ambient`.
ComplexMatrix embed(const ComplexMatrix &op, const Layout &op_layout, const Layout &ambient);

ComplexMatrix dagger(const ComplexMatrix &m);
ComplexMatrix transpose(const ComplexMatrix &m);
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(Complex c, const ComplexMatrix &m);
ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b);
Complex trace(const ComplexMatrix &m);
/// sqrt(sum |a_ij - b_ij|^2).
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tolerance = kTolerance);

std::vector<Complex> matvec(const ComplexMatrix &m, std::span<const Complex> v);
/// <a|b>, conjugating the left argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);
/// |ket><bra|.
ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }
inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) { return subtract(a, b); }
inline ComplexMatrix operator*(Complex c, const ComplexMatrix &m) { return scale(c, m); }

std::string to_string(const ComplexMatrix &m);

}  // namespace tpclone::qmath

#endif  // TPCLONE_QMATH_H
