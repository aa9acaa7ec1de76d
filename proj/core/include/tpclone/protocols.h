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

#ifndef TPCLONE_PROTOCOLS_H
#define TPCLONE_PROTOCOLS_H

#include <vector>

#include "tpclone/qcore.h"

/// Teleportation-derived protocols on |phi>_S |Psi->_AB.
///
/// Subsystem labels are fixed: S is the input qubit, A is Alice's half of
/// the shared singlet, B is Bob's half.
namespace tpclone::protocols {

/// Bob's correction for each Bell outcome: Psi- -> I, Psi+ -> Z, Phi- -> X,
/// Phi+ -> Y.
Pauli correction_for(BellState outcome);

struct TeleportOutcome {
    BellState bell_result;
    Pauli correction;
    DensityMatrix bob_state;        ///< after the correction
    DensityMatrix bob_uncorrected;  ///< before the correction
    double probability;
};

/// Full four-outcome Bell measurement on S, A. Outcomes are returned in
/// kBellStates order.
std::vector<TeleportOutcome> standard_teleport(const PureState &phi);

/// Result of a dichotomic measurement {|b><b|_SA, I - |b><b|_SA} on S, A.
struct CloneUnotResult {
    BellState identified;
    DensityMatrix success_branch;  ///< Bob's corrected qubit when b is detected
    PureState projected;           ///< normalized state on S, A, B in the complement branch
    DensityMatrix rho_SA;
    DensityMatrix rho_S;
    DensityMatrix rho_A;
    DensityMatrix rho_B;
    double p_singlet;     ///< probability of detecting b
    double p_complement;  ///< probability of the complement branch
};

/// The dichotomic protocol identifying `identified` against its complement.
CloneUnotResult dichotomic_protocol(const PureState &phi, BellState identified);

/// Singlet-vs-complement protocol. The complement branch yields the two
/// optimal clones on S, A and the universal-NOT output on B. Throws
/// std::logic_error if rho_SA fails to match cloning_density_reference.
CloneUnotResult modified_protocol(const PureState &phi);

/// Phi+-vs-complement protocol; B receives the transpose-map approximation.
CloneUnotResult transpose_variant(const PureState &phi);

/// Equal-weight mixture of Bob's uncorrected states over the three
/// non-singlet Bell outcomes of standard_teleport.
DensityMatrix unot_as_mixture(const PureState &phi);

struct MixedAncillaClone {
    DensityMatrix rho_SA;
    DensityMatrix rho_S;
    DensityMatrix rho_A;
    double p_success;
};

/// |phi><phi|_S (x) I_A/2 projected onto the complement of the S,A singlet.
MixedAncillaClone mixed_ancilla_clone(const PureState &phi);

/// (|phi_perp phi> + |phi phi_perp>)/sqrt2 on S, A.
PureState symmetric_pair(const PureState &phi);

/// 2/3 |phi phi><phi phi| + 1/3 |{phi,phi_perp}><{phi,phi_perp}| on S, A.
DensityMatrix cloning_density_reference(const PureState &phi);

}  // namespace tpclone::protocols

#endif  // TPCLONE_PROTOCOLS_H
