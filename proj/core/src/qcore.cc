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

#include "tpclone/qcore.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tpclone {

using namespace std::complex_literals;
using qmath::dagger;
using qmath::frobenius_distance;
using qmath::layout_dimension;

ComplexMatrix pauli(Pauli which) {
    static const ComplexMatrix kI = ComplexMatrix::identity(2);
    static const ComplexMatrix kX{{0, 1}, {1, 0}};
    static const ComplexMatrix kZ{{1, 0}, {0, -1}};
    static const ComplexMatrix kY = -1i * kZ * kX;
    switch (which) {
        case Pauli::I:
            return kI;
        case Pauli::X:
            return kX;
        case Pauli::Y:
            return kY;
        case Pauli::Z:
            return kZ;
    }
    throw std::invalid_argument("pauli: bad enum value");
}

std::string_view to_string(Pauli which) {
    switch (which) {
        case Pauli::I:
            return "I";
        case Pauli::X:
            return "X";
        case Pauli::Y:
            return "Y";
        case Pauli::Z:
            return "Z";
    }
    return "?";
}

PureState::PureState(Layout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_dimension(layout_)) {
        throw std::invalid_argument("PureState: amplitude count does not match layout dimension");
    }
    double n = qmath::norm(amplitudes_);
    if (!std::isfinite(n) || std::abs(n - 1) > kTolerance) {
        std::ostringstream ss;
        ss << "PureState: norm " << n << " is not 1";
        throw std::invalid_argument(ss.str());
    }
}

PureState PureState::normalized(Layout layout, std::vector<Complex> amplitudes) {
    double n = qmath::norm(amplitudes);
    if (!(n > 1e-300) || !std::isfinite(n)) {
        throw std::invalid_argument("PureState: cannot normalize a zero vector");
    }
    for (auto &a : amplitudes) {
        a /= n;
    }
    return {std::move(layout), std::move(amplitudes)};
}

PureState PureState::qubit(std::string label, Complex alpha, Complex beta) {
    return normalized({{std::move(label), 2}}, {alpha, beta});
}

PureState PureState::relabeled(Layout layout) const { return {std::move(layout), amplitudes_}; }

PureState tensor(const PureState &a, const PureState &b) {
    Layout layout = a.layout();
    layout.insert(layout.end(), b.layout().begin(), b.layout().end());
    qmath::validate_layout(layout);
    return PureState::normalized(std::move(layout), qmath::tensor(a.amplitudes(), b.amplitudes()));
}

Complex overlap(const PureState &a, const PureState &b) { return qmath::inner(a.amplitudes(), b.amplitudes()); }

PureState apply_unitary(const ComplexMatrix &u, const PureState &s) {
    return {s.layout(), qmath::matvec(u, s.amplitudes())};
}

DensityCheck check_density(const ComplexMatrix &m, double tolerance) {
    DensityCheck check;
    check.tolerance = tolerance;
    if (!m.is_square()) {
        check.hermiticity_error = std::numeric_limits<double>::infinity();
        return check;
    }
    size_t n = m.rows();
    check.hermiticity_error = frobenius_distance(m, dagger(m));
    check.trace_error = std::abs(qmath::trace(m) - 1.0);

    check.min_diagonal = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; i++) {
        check.min_diagonal = std::min(check.min_diagonal, m(i, i).real());
    }
    check.min_principal_minor = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            double minor = m(i, i).real() * m(j, j).real() - std::norm(m(i, j));
            check.min_principal_minor = std::min(check.min_principal_minor, minor);
        }
    }

    // Fixed seed so that validation is reproducible.
    std::mt19937_64 rng(0x5eedf00dULL);
    std::normal_distribution<double> gauss;
    check.min_sandwich = std::numeric_limits<double>::infinity();
    std::vector<Complex> v(n);
    for (int sample = 0; sample < 32; sample++) {
        for (auto &x : v) {
            x = {gauss(rng), gauss(rng)};
        }
        double len = qmath::norm(v);
        for (auto &x : v) {
            x /= len;
        }
        double s = qmath::inner(v, qmath::matvec(m, v)).real();
        check.min_sandwich = std::min(check.min_sandwich, s);
    }
    return check;
}

DensityMatrix::DensityMatrix(Layout layout, ComplexMatrix matrix) : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    if (!matrix_.is_square() || matrix_.rows() != layout_dimension(layout_)) {
        throw std::invalid_argument("DensityMatrix: matrix dimension does not match layout");
    }
    auto check = check_density(matrix_);
    if (!check.ok()) {
        std::ostringstream ss;
        ss << "DensityMatrix: invalid (hermiticity error " << check.hermiticity_error << ", trace error "
           << check.trace_error << ", min diagonal " << check.min_diagonal << ", min minor "
           << check.min_principal_minor << ", min sandwich " << check.min_sandwich << ")";
        throw std::invalid_argument(ss.str());
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &s) {
    return {s.layout(), qmath::outer(s.amplitudes(), s.amplitudes())};
}

DensityMatrix DensityMatrix::trace_out(const std::vector<std::string> &labels) const {
    return {qmath::remove_labels(layout_, labels), qmath::partial_trace(matrix_, layout_, labels)};
}

DensityMatrix DensityMatrix::relabeled(Layout layout) const { return {std::move(layout), matrix_}; }

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    Layout layout = a.layout();
    layout.insert(layout.end(), b.layout().begin(), b.layout().end());
    return {std::move(layout), qmath::tensor(a.matrix(), b.matrix())};
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw std::invalid_argument("mix: need one weight per state");
    }
    ComplexMatrix acc(states.front().dimension(), states.front().dimension());
    double total = 0;
    for (size_t k = 0; k < states.size(); k++) {
        if (weights[k] < 0) {
            throw std::invalid_argument("mix: negative weight");
        }
        if (states[k].layout() != states.front().layout()) {
            throw std::invalid_argument("mix: layouts differ");
        }
        acc = acc + Complex(weights[k]) * states[k].matrix();
        total += weights[k];
    }
    if (std::abs(total - 1) > kTolerance) {
        throw std::invalid_argument("mix: weights do not sum to 1");
    }
    return {states.front().layout(), acc};
}

double trace_preservation_residual(std::span<const ComplexMatrix> kraus) {
    ComplexMatrix acc(kraus.front().cols(), kraus.front().cols());
    for (const auto &k : kraus) {
        acc = acc + dagger(k) * k;
    }
    return frobenius_distance(acc, ComplexMatrix::identity(acc.rows()));
}

QuantumChannel::QuantumChannel(std::string name, std::vector<ComplexMatrix> kraus)
    : name_(std::move(name)), kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw std::invalid_argument("QuantumChannel '" + name_ + "': empty Kraus list");
    }
    for (const auto &k : kraus_) {
        if (!k.is_square() || k.rows() != kraus_.front().rows()) {
            throw std::invalid_argument("QuantumChannel '" + name_ + "': Kraus operators must share a square shape");
        }
    }
    double residual = trace_preservation_residual(kraus_);
    if (residual > kTolerance) {
        std::ostringstream ss;
        ss << "QuantumChannel '" << name_ << "': not trace preserving (residual " << residual << ")";
        throw std::invalid_argument(ss.str());
    }
}

QuantumChannel compose(const QuantumChannel &outer, const QuantumChannel &inner, std::string name) {
    std::vector<ComplexMatrix> kraus;
    for (const auto &a : outer.kraus()) {
        for (const auto &b : inner.kraus()) {
            kraus.push_back(a * b);
        }
    }
    return {std::move(name), std::move(kraus)};
}

DensityMatrix apply_channel(const QuantumChannel &channel, const DensityMatrix &rho) {
    if (channel.dimension() != rho.dimension()) {
        throw std::invalid_argument("apply_channel: channel '" + channel.name() + "' has dimension " +
                                    std::to_string(channel.dimension()) + ", state has " +
                                    std::to_string(rho.dimension()));
    }
    ComplexMatrix out(rho.dimension(), rho.dimension());
    for (const auto &k : channel.kraus()) {
        out = out + k * rho.matrix() * dagger(k);
    }
    return {rho.layout(), out};
}

std::string_view to_string(BellState tag) {
    switch (tag) {
        case BellState::PsiMinus:
            return "psi_minus";
        case BellState::PsiPlus:
            return "psi_plus";
        case BellState::PhiMinus:
            return "phi_minus";
        case BellState::PhiPlus:
            return "phi_plus";
    }
    return "?";
}

PureState bell_state(BellState tag, const std::string &first, const std::string &second) {
    if (first == second) {
        throw std::invalid_argument("bell_state: duplicate label '" + first + "'");
    }
    const double h = 1 / std::sqrt(2.0);
    std::vector<Complex> amps;
    switch (tag) {
        case BellState::PsiMinus:
            amps = {0, h, -h, 0};
            break;
        case BellState::PsiPlus:
            amps = {0, h, h, 0};
            break;
        case BellState::PhiMinus:
            amps = {h, 0, 0, -h};
            break;
        case BellState::PhiPlus:
            amps = {h, 0, 0, h};
            break;
    }
    return {{{first, 2}, {second, 2}}, std::move(amps)};
}

PureState orthogonal_qubit(const PureState &phi) {
    if (phi.dimension() != 2 || phi.layout().size() != 1) {
        throw std::invalid_argument("orthogonal_qubit: expected a single qubit");
    }
    auto a = phi.amplitudes();
    return {phi.layout(), {-std::conj(a[1]), std::conj(a[0])}};
}

ComplexMatrix projector_onto(const PureState &s) { return qmath::outer(s.amplitudes(), s.amplitudes()); }

ComplexMatrix complement_projector(const PureState &s, const Layout &ambient) {
    auto p = qmath::embed(projector_onto(s), s.layout(), ambient);
    return ComplexMatrix::identity(p.rows()) - p;
}

Projection project_and_normalize(const PureState &s, const ComplexMatrix &projector) {
    if (projector.rows() != s.dimension() || !projector.is_square()) {
        throw std::invalid_argument("project_and_normalize: projector does not match state dimension");
    }
    auto v = qmath::matvec(projector, s.amplitudes());
    double probability = qmath::norm(v);
    probability *= probability;
    if (probability < kDegenerateProbability) {
        throw DegenerateProjection("project_and_normalize: state annihilated by projector");
    }
    return {PureState::normalized(s.layout(), std::move(v)), std::min(probability, 1.0)};
}

double fidelity(const DensityMatrix &rho, const PureState &target) {
    if (rho.dimension() != target.dimension()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    auto rv = qmath::matvec(rho.matrix(), target.amplitudes());
    return qmath::inner(target.amplitudes(), rv).real();
}

const StandardChannels &standard_channels() {
    static const StandardChannels channels = [] {
        const Complex half = 0.5;
        const Complex third = 1 / std::sqrt(3.0);
        QuantumChannel dep("E_DEP", {half * pauli(Pauli::I), half * pauli(Pauli::X), half * pauli(Pauli::Y),
                                     half * pauli(Pauli::Z)});
        QuantumChannel unot("E_UNOT", {third * pauli(Pauli::Z), third * pauli(Pauli::X), third * pauli(Pauli::Y)});
        QuantumChannel sy("E_sigmaY", {pauli(Pauli::Y)});
        QuantumChannel tr = compose(sy, unot, "E_TRANSPOSE");
        return StandardChannels{std::move(dep), std::move(unot), std::move(sy), std::move(tr)};
    }();
    return channels;
}

PureState random_qubit(std::mt19937_64 &rng, std::string label) {
    std::normal_distribution<double> gauss;
    Complex a{gauss(rng), gauss(rng)};
    Complex b{gauss(rng), gauss(rng)};
    return PureState::qubit(std::move(label), a, b);
}

ComplexMatrix random_su2(std::mt19937_64 &rng) {
    auto q = random_qubit(rng);
    Complex a = q.amplitudes()[0];
    Complex b = q.amplitudes()[1];
    return {{a, -std::conj(b)}, {b, std::conj(a)}};
}

ComplexMatrix swap_operator() { return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}; }

}  // namespace tpclone
