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

#include <random>

#include "gtest/gtest.h"

using namespace tpclone::qmath;
using namespace std::complex_literals;

namespace {

const ComplexMatrix kX{{0, 1}, {1, 0}};
const ComplexMatrix kZ{{1, 0}, {0, -1}};
const ComplexMatrix kY{{0, -1i}, {1i, 0}};

ComplexMatrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols) {
    std::normal_distribution<double> g;
    std::vector<Complex> e(rows * cols);
    for (auto &x : e) {
        x = {g(rng), g(rng)};
    }
    return {rows, cols, std::move(e)};
}

}  // namespace

TEST(qmath, construction_rejects_bad_input) {
    ASSERT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    ASSERT_THROW(ComplexMatrix(1, 1, {Complex(NAN, 0)}), std::invalid_argument);
    ASSERT_THROW(ComplexMatrix(0, 3), std::invalid_argument);
    ASSERT_THROW((ComplexMatrix{{1, 2}, {3}}), std::invalid_argument);
}

TEST(qmath, tensor_examples) {
    ASSERT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));

    auto zx = tensor(kZ, kX);
    ComplexMatrix expected{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}};
    ASSERT_EQ(zx, expected);

    ComplexMatrix p0{{1, 0}, {0, 0}};
    ComplexMatrix p1{{0, 0}, {0, 1}};
    std::vector<Complex> diag{0, 1, 0, 0};
    ASSERT_EQ(tensor(p0, p1), ComplexMatrix::diagonal(diag));
}

TEST(qmath, tensor_is_associative) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 10; k++) {
        auto a = random_matrix(rng, 2, 3);
        auto b = random_matrix(rng, 2, 2);
        auto c = random_matrix(rng, 3, 1);
        ASSERT_LT(frobenius_distance(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
    }
}

TEST(qmath, partial_trace_examples) {
    const double h = 1 / std::sqrt(2.0);
    std::vector<Complex> singlet{0, h, -h, 0};
    auto layout = qubit_layout({"A", "B"});
    auto marginal = partial_trace(outer(singlet, singlet), layout, {"A"});
    ASSERT_LT(frobenius_distance(marginal, scale(0.5, ComplexMatrix::identity(2))), 1e-15);

    ComplexMatrix rho_s{{0.7, 0.2 - 0.1i}, {0.2 + 0.1i, 0.3}};
    ComplexMatrix rho_a{{0.4, 0.1i}, {-0.1i, 0.6}};
    auto product = tensor(rho_s, rho_a);
    auto sa = qubit_layout({"S", "A"});
    ASSERT_LT(frobenius_distance(partial_trace(product, sa, {"A"}), rho_s), 1e-15);
    ASSERT_LT(frobenius_distance(partial_trace(product, sa, {"S"}), rho_a), 1e-15);
}

TEST(qmath, partial_trace_keeps_order_of_remaining_labels) {
    std::mt19937_64 rng(2);
    auto a = random_matrix(rng, 2, 2);
    auto b = random_matrix(rng, 3, 3);
    auto c = random_matrix(rng, 2, 2);
    Layout layout{{"X", 2}, {"Y", 3}, {"Z", 2}};
    auto m = tensor(tensor(a, b), c);
    auto out = partial_trace(m, layout, {"Y"});
    ASSERT_LT(frobenius_distance(out, scale(trace(b), tensor(a, c))), 1e-12);
}

TEST(qmath, partial_trace_property) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; k++) {
        auto a = random_matrix(rng, 2, 2);
        auto b = random_matrix(rng, 4, 4);
        Layout layout{{"X", 2}, {"Y", 4}};
        auto m = tensor(a, b);
        ASSERT_LT(frobenius_distance(partial_trace(m, layout, {"Y"}), scale(trace(b), a)), 1e-12);
        auto r = random_matrix(rng, 8, 8);
        ASSERT_LT(std::abs(trace(partial_trace(r, layout, {"X"})) - trace(r)), 1e-12);
        ASSERT_LT(std::abs(trace(partial_trace(r, layout, {"X", "Y"})) - trace(r)), 1e-12);
    }
}

TEST(qmath, partial_trace_errors) {
    auto layout = qubit_layout({"A", "B"});
    ASSERT_THROW(partial_trace(ComplexMatrix::identity(8), layout, {"A"}), std::invalid_argument);
    ASSERT_THROW(partial_trace(ComplexMatrix::identity(4), layout, {"Q"}), std::invalid_argument);
    ASSERT_THROW(partial_trace(ComplexMatrix(4, 2), layout, {"A"}), std::invalid_argument);
    ASSERT_THROW(qubit_layout({"A", "A"}), std::invalid_argument);
}

TEST(qmath, embed_places_operator_on_named_labels) {
    auto sab = qubit_layout({"S", "A", "B"});
    ASSERT_EQ(embed(kX, qubit_layout({"A"}), sab), tensor(tensor(ComplexMatrix::identity(2), kX), ComplexMatrix::identity(2)));
    // Reversed order of the operator's own labels.
    auto zx = tensor(kZ, kX);
    ASSERT_EQ(embed(zx, qubit_layout({"B", "S"}), sab), tensor(tensor(kX, ComplexMatrix::identity(2)), kZ));
    ASSERT_THROW(embed(kX, qubit_layout({"Q"}), sab), std::invalid_argument);
}

TEST(qmath, elementary_ops) {
    ASSERT_EQ(dagger(kY), kY);
    ASSERT_EQ(trace(ComplexMatrix::identity(4)), Complex(4));
    ASSERT_EQ(frobenius_distance(kX, kX), 0.0);
    ASSERT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), std::invalid_argument);
    ASSERT_THROW(add(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), std::invalid_argument);
    ASSERT_THROW(trace(ComplexMatrix(2, 3)), std::invalid_argument);
    ASSERT_NEAR(frobenius_distance(kX, kZ), 2.0, 1e-15);
}

TEST(qmath, dagger_reverses_products) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; k++) {
        auto a = random_matrix(rng, 3, 4);
        auto b = random_matrix(rng, 4, 2);
        ASSERT_LT(frobenius_distance(dagger(a * b), dagger(b) * dagger(a)), 1e-12);
    }
}
