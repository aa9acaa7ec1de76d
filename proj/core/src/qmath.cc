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

#include "tpclone/qmath.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tpclone::qmath {

namespace {

void require(bool condition, const char *message) {
    if (!condition) {
        throw std::invalid_argument(message);
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream ss;
        ss << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw std::invalid_argument(ss.str());
    }
}

// Big-endian digit decomposition of composite indices.
struct Digits {
    std::vector<size_t> dims;
    std::vector<size_t> strides;

    explicit Digits(const Layout &layout) : dims(layout.size()), strides(layout.size()) {
        size_t stride = 1;
        for (size_t k = layout.size(); k-- > 0;) {
            dims[k] = layout[k].dimension;
            strides[k] = stride;
            stride *= dims[k];
        }
    }

    size_t digit(size_t index, size_t k) const { return (index / strides[k]) % dims[k]; }
};

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
    require(entries_.size() == rows * cols, "ComplexMatrix: entry count does not match rows*cols");
    for (const auto &e : entries_) {
        require(std::isfinite(e.real()) && std::isfinite(e.imag()), "ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    require(rows_ > 0 && cols_ > 0, "ComplexMatrix: dimensions must be positive");
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        require(row.size() == cols_, "ComplexMatrix: ragged initializer");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    std::vector<Complex> e(n * n);
    for (size_t k = 0; k < n; k++) {
        e[k * n + k] = 1.0;
    }
    return {n, n, std::move(e)};
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    size_t n = diag.size();
    std::vector<Complex> e(n * n);
    for (size_t k = 0; k < n; k++) {
        e[k * n + k] = diag[k];
    }
    return {n, n, std::move(e)};
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> amplitudes) {
    return {amplitudes.size(), 1, std::vector<Complex>(amplitudes.begin(), amplitudes.end())};
}

Layout qubit_layout(std::initializer_list<const char *> names) {
    Layout layout;
    for (const char *name : names) {
        layout.push_back({name, 2});
    }
    validate_layout(layout);
    return layout;
}

void validate_layout(const Layout &layout) {
    std::set<std::string> seen;
    for (const auto &label : layout) {
        if (label.dimension == 0) {
            throw std::invalid_argument("layout: label '" + label.name + "' has zero dimension");
        }
        if (!seen.insert(label.name).second) {
            throw std::invalid_argument("layout: duplicate label '" + label.name + "'");
        }
    }
}

size_t layout_dimension(const Layout &layout) {
    validate_layout(layout);
    size_t d = 1;
    for (const auto &label : layout) {
        d *= label.dimension;
    }
    return d;
}

size_t label_index(const Layout &layout, const std::string &name) {
    for (size_t k = 0; k < layout.size(); k++) {
        if (layout[k].name == name) {
            return k;
        }
    }
    throw std::invalid_argument("layout: unknown label '" + name + "'");
}

Layout remove_labels(const Layout &layout, const std::vector<std::string> &names) {
    for (const auto &name : names) {
        label_index(layout, name);
    }
    Layout out;
    for (const auto &label : layout) {
        if (std::find(names.begin(), names.end(), label.name) == names.end()) {
            out.push_back(label);
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t rows = a.rows() * b.rows();
    size_t cols = a.cols() * b.cols();
    std::vector<Complex> e(rows * cols);
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            Complex s = a(ar, ac);
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    e[(ar * b.rows() + br) * cols + ac * b.cols() + bc] = s * b(br, bc);
                }
            }
        }
    }
    return {rows, cols, std::move(e)};
}

std::vector<Complex> tensor(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const Layout &layout, const std::vector<std::string> &traced) {
    size_t dim = layout_dimension(layout);
    require(m.is_square(), "partial_trace: matrix is not square");
    if (m.rows() != dim) {
        throw std::invalid_argument(
            "partial_trace: matrix dimension " + std::to_string(m.rows()) + " does not match layout dimension " +
            std::to_string(dim));
    }
    std::vector<bool> is_traced(layout.size(), false);
    for (const auto &name : traced) {
        is_traced[label_index(layout, name)] = true;
    }

    Digits digits(layout);
    size_t kept_dim = 1;
    for (size_t k = 0; k < layout.size(); k++) {
        if (!is_traced[k]) {
            kept_dim *= layout[k].dimension;
        }
    }
    // Split each full index into (kept index, traced index).
    std::vector<size_t> kept_of(dim), traced_of(dim);
    for (size_t i = 0; i < dim; i++) {
        size_t kept = 0, tr = 0;
        for (size_t k = 0; k < layout.size(); k++) {
            size_t d = digits.digit(i, k);
            if (is_traced[k]) {
                tr = tr * layout[k].dimension + d;
            } else {
                kept = kept * layout[k].dimension + d;
            }
        }
        kept_of[i] = kept;
        traced_of[i] = tr;
    }

    std::vector<Complex> out(kept_dim * kept_dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            if (traced_of[i] == traced_of[j]) {
                out[kept_of[i] * kept_dim + kept_of[j]] += m(i, j);
            }
        }
    }
    return {kept_dim, kept_dim, std::move(out)};
}

ComplexMatrix embed(const ComplexMatrix &op, const Layout &op_layout, const Layout &ambient) {
    size_t op_dim = layout_dimension(op_layout);
    size_t dim = layout_dimension(ambient);
    require(op.is_square() && op.rows() == op_dim, "embed: operator does not match its layout");

    std::vector<size_t> positions;
    for (const auto &label : op_layout) {
        size_t k = label_index(ambient, label.name);
        if (ambient[k].dimension != label.dimension) {
            throw std::invalid_argument("embed: dimension mismatch for label '" + label.name + "'");
        }
        positions.push_back(k);
    }
    std::vector<bool> in_op(ambient.size(), false);
    for (size_t k : positions) {
        in_op[k] = true;
    }

    Digits digits(ambient);
    std::vector<size_t> op_of(dim), rest_of(dim);
    for (size_t i = 0; i < dim; i++) {
        size_t o = 0;
        for (size_t k : positions) {
            o = o * ambient[k].dimension + digits.digit(i, k);
        }
        size_t r = 0;
        for (size_t k = 0; k < ambient.size(); k++) {
            if (!in_op[k]) {
                r = r * ambient[k].dimension + digits.digit(i, k);
            }
        }
        op_of[i] = o;
        rest_of[i] = r;
    }

    std::vector<Complex> out(dim * dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            if (rest_of[i] == rest_of[j]) {
                out[i * dim + j] = op(op_of[i], op_of[j]);
            }
        }
    }
    return {dim, dim, std::move(out)};
}

ComplexMatrix dagger(const ComplexMatrix &m) {
    std::vector<Complex> e(m.rows() * m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            e[c * m.rows() + r] = std::conj(m(r, c));
        }
    }
    return {m.cols(), m.rows(), std::move(e)};
}

ComplexMatrix transpose(const ComplexMatrix &m) {
    std::vector<Complex> e(m.rows() * m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            e[c * m.rows() + r] = m(r, c);
        }
    }
    return {m.cols(), m.rows(), std::move(e)};
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        std::ostringstream ss;
        ss << "matmul: inner dimension mismatch " << a.rows() << "x" << a.cols() << " * " << b.rows() << "x"
           << b.cols();
        throw std::invalid_argument(ss.str());
    }
    std::vector<Complex> e(a.rows() * b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            Complex s = a(r, k);
            if (s == Complex{}) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); c++) {
                e[r * b.cols() + c] += s * b(k, c);
            }
        }
    }
    return {a.rows(), b.cols(), std::move(e)};
}

ComplexMatrix scale(Complex c, const ComplexMatrix &m) {
    std::vector<Complex> e(m.entries().begin(), m.entries().end());
    for (auto &x : e) {
        x *= c;
    }
    return {m.rows(), m.cols(), std::move(e)};
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "add");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (size_t k = 0; k < e.size(); k++) {
        e[k] += b.entries()[k];
    }
    return {a.rows(), a.cols(), std::move(e)};
}

ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "subtract");
    std::vector<Complex> e(a.entries().begin(), a.entries().end());
    for (size_t k = 0; k < e.size(); k++) {
        e[k] -= b.entries()[k];
    }
    return {a.rows(), a.cols(), std::move(e)};
}

Complex trace(const ComplexMatrix &m) {
    require(m.is_square(), "trace: matrix is not square");
    Complex t{};
    for (size_t k = 0; k < m.rows(); k++) {
        t += m(k, k);
    }
    return t;
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "frobenius_distance");
    double s = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        s += std::norm(a.entries()[k] - b.entries()[k]);
    }
    return std::sqrt(s);
}

bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b, double tolerance) {
    return a.rows() == b.rows() && a.cols() == b.cols() && frobenius_distance(a, b) <= tolerance;
}

std::vector<Complex> matvec(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw std::invalid_argument("matvec: dimension mismatch");
    }
    std::vector<Complex> out(m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    Complex s{};
    for (size_t k = 0; k < a.size(); k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double norm(std::span<const Complex> v) {
    double s = 0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    std::vector<Complex> e(ket.size() * bra.size());
    for (size_t r = 0; r < ket.size(); r++) {
        for (size_t c = 0; c < bra.size(); c++) {
            e[r * bra.size() + c] = ket[r] * std::conj(bra[c]);
        }
    }
    return {ket.size(), bra.size(), std::move(e)};
}

std::string to_string(const ComplexMatrix &m) {
    std::ostringstream ss;
    ss << std::setprecision(6);
    for (size_t r = 0; r < m.rows(); r++) {
        ss << (r == 0 ? "[" : " ");
        for (size_t c = 0; c < m.cols(); c++) {
            auto v = m(r, c);
            ss << (c == 0 ? "" : ", ") << v.real();
            if (v.imag() != 0) {
                ss << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            }
        }
        ss << (r + 1 == m.rows() ? "]" : "\n");
    }
    return ss.str();
}

}  // namespace tpclone::qmath
