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

#include "tpclone/protocols.h"

#include <array>
#include <sstream>

namespace tpclone::protocols {

namespace {

const Layout &sab_layout() {
    static const Layout layout = qmath::qubit_layout({"S", "A", "B"});
    return layout;
}

const Layout &sa_layout() {
    static const Layout layout = qmath::qubit_layout({"S", "A"});
    return layout;
}

PureState as_input_qubit(const PureState &phi, const char *where) {
    if (phi.layout().size() != 1 || phi.dimension() != 2) {
        throw std::invalid_argument(std::string(where) + ": input must be a single qubit");
    }
    return phi.relabeled({{"S", 2}});
}

// |phi>_S |Psi->_AB
PureState omega(const PureState &phi_s) { return tensor(phi_s, bell_state(BellState::PsiMinus, "A", "B")); }

DensityMatrix conjugate(const ComplexMatrix &u, const DensityMatrix &rho) {
    return {rho.layout(), u * rho.matrix() * qmath::dagger(u)};
}

DensityMatrix bob_marginal(const PureState &sab) { return DensityMatrix::from_pure(sab).trace_out({"S", "A"}); }

}  // namespace

Pauli correction_for(BellState outcome) {
    switch (outcome) {
        case BellState::PsiMinus:
            return Pauli::I;
        case BellState::PsiPlus:
            return Pauli::Z;
        case BellState::PhiMinus:
            return Pauli::X;
        case BellState::PhiPlus:
            return Pauli::Y;
    }
    throw std::invalid_argument("correction_for: bad enum value");
}

std::vector<TeleportOutcome> standard_teleport(const PureState &phi) {
    auto phi_s = as_input_qubit(phi, "standard_teleport");
    auto state = omega(phi_s);
    std::vector<TeleportOutcome> outcomes;
    for (BellState tag : kBellStates) {
        auto p = qmath::embed(projector_onto(bell_state(tag, "S", "A")), sa_layout(), sab_layout());
        auto branch = project_and_normalize(state, p);
        auto uncorrected = bob_marginal(branch.state);
        Pauli fix = correction_for(tag);
        outcomes.push_back({tag, fix, conjugate(pauli(fix), uncorrected), uncorrected, branch.probability});
    }
    return outcomes;
}

CloneUnotResult dichotomic_protocol(const PureState &phi, BellState identified) {
    auto phi_s = as_input_qubit(phi, "dichotomic_protocol");
    auto state = omega(phi_s);
    auto target = bell_state(identified, "S", "A");

    auto hit = project_and_normalize(state, qmath::embed(projector_onto(target), sa_layout(), sab_layout()));
    auto success = conjugate(pauli(correction_for(identified)), bob_marginal(hit.state));

    auto miss = project_and_normalize(state, complement_projector(target, sab_layout()));
    auto full = DensityMatrix::from_pure(miss.state);
    auto rho_sa = full.trace_out({"B"});
    return CloneUnotResult{
        .identified = identified,
        .success_branch = success,
        .projected = miss.state,
        .rho_SA = rho_sa,
        .rho_S = rho_sa.trace_out({"A"}),
        .rho_A = rho_sa.trace_out({"S"}),
        .rho_B = full.trace_out({"S", "A"}),
        .p_singlet = hit.probability,
        .p_complement = miss.probability,
    };
}

CloneUnotResult modified_protocol(const PureState &phi) {
    auto result = dichotomic_protocol(phi, BellState::PsiMinus);
    auto reference = cloning_density_reference(phi);
    double d = qmath::frobenius_distance(result.rho_SA.matrix(), reference.matrix());
    if (d > kTolerance) {
        std::ostringstream ss;
        ss << "modified_protocol: rho_SA deviates from the clone decomposition by " << d;
        throw std::logic_error(ss.str());
    }
    return result;
}

CloneUnotResult transpose_variant(const PureState &phi) { return dichotomic_protocol(phi, BellState::PhiPlus); }

DensityMatrix unot_as_mixture(const PureState &phi) {
    auto outcomes = standard_teleport(phi);
    std::vector<DensityMatrix> states;
    for (const auto &o : outcomes) {
        if (o.bell_result != BellState::PsiMinus) {
            states.push_back(o.bob_uncorrected);
        }
    }
    std::array<double, 3> weights{1.0 / 3, 1.0 / 3, 1.0 / 3};
    return mix(states, weights);
}

MixedAncillaClone mixed_ancilla_clone(const PureState &phi) {
    auto phi_s = as_input_qubit(phi, "mixed_ancilla_clone");
    auto rho_in = qmath::tensor(projector_onto(phi_s), Complex(0.5) * ComplexMatrix::identity(2));
    auto p = complement_projector(bell_state(BellState::PsiMinus, "S", "A"), sa_layout());
    auto projected = p * rho_in * p;
    double p_success = qmath::trace(projected).real();
    if (p_success < kDegenerateProbability) {
        throw DegenerateProjection("mixed_ancilla_clone: state annihilated");
    }
    DensityMatrix rho_sa(sa_layout(), Complex(1 / p_success) * projected);
    return {rho_sa, rho_sa.trace_out({"A"}), rho_sa.trace_out({"S"}), p_success};
}

PureState symmetric_pair(const PureState &phi) {
    auto s = as_input_qubit(phi, "symmetric_pair");
    auto perp = orthogonal_qubit(s);
    auto a = qmath::tensor(perp.amplitudes(), s.amplitudes());
    auto b = qmath::tensor(s.amplitudes(), perp.amplitudes());
    for (size_t k = 0; k < a.size(); k++) {
        a[k] += b[k];
    }
    return PureState::normalized(sa_layout(), std::move(a));
}

DensityMatrix cloning_density_reference(const PureState &phi) {
    auto s = as_input_qubit(phi, "cloning_density_reference");
    auto twin = qmath::tensor(s.amplitudes(), s.amplitudes());
    auto pair = symmetric_pair(s);
    auto m = Complex(2.0 / 3) * qmath::outer(twin, twin) + Complex(1.0 / 3) * projector_onto(pair);
    return {sa_layout(), m};
}

}  // namespace tpclone::protocols
