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

#ifndef TPCLONE_QCORE_H
#define TPCLONE_QCORE_H

#include <array>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpclone/qmath.h"

namespace tpclone {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::kTolerance;
using qmath::Layout;
using qmath::SubsystemLabel;

enum class Pauli { I, X, Y, Z };

/// Standard 2x2 Pauli matrix. Y is built as -i * Z * X.
ComplexMatrix pauli(Pauli which);
std::string_view to_string(Pauli which);

/// Unit-norm amplitude vector over a labeled tensor product.
class PureState {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within kTolerance.
    PureState(Layout layout, std::vector<Complex> amplitudes);

    /// Rescales to unit norm; throws if the vector is (numerically) zero.
    static PureState normalized(Layout layout, std::vector<Complex> amplitudes);
    /// alpha|0> + beta|1> on a single qubit `label`, normalized.
    static PureState qubit(std::string label, Complex alpha, Complex beta);

    const Layout &layout() const { return layout_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    size_t dimension() const { return amplitudes_.size(); }

    /// Same amplitudes on a different layout of equal dimension.
    PureState relabeled(Layout layout) const;

   private:
    Layout layout_;
    std::vector<Complex> amplitudes_;
};

PureState tensor(const PureState &a, const PureState &b);
/// <a|b>.
Complex overlap(const PureState &a, const PureState &b);
/// U|s>; throws if U is not norm-preserving on s.
PureState apply_unitary(const ComplexMatrix &u, const PureState &s);

/// Outcome of checking the density-matrix conditions on a raw matrix.
struct DensityCheck {
    double hermiticity_error = 0;  ///< ||M - M^dagger||_F
    double trace_error = 0;        ///< |tr M - 1|
    double min_diagonal = 0;
    double min_principal_minor = 0;  ///< smallest 2x2 principal minor (0 if dimension 1)
    double min_sandwich = 0;         ///< smallest <v|M|v> over the sampled unit vectors
    double tolerance = kTolerance;

    bool hermitian() const { return hermiticity_error <= tolerance; }
    bool unit_trace() const { return trace_error <= tolerance; }
    bool positive() const {
        return min_diagonal >= -tolerance && min_principal_minor >= -tolerance && min_sandwich >= -tolerance;
    }
    bool ok() const { return hermitian() && unit_trace() && positive(); }
};

/// Positivity uses principal minors plus a fixed set of pseudo-random
/// unit vectors; no eigensolver.
DensityCheck check_density(const ComplexMatrix &m, double tolerance = kTolerance);

class DensityMatrix {
   public:
    /// Throws std::invalid_argument if check_density fails or the layout
    /// does not match.
    DensityMatrix(Layout layout, ComplexMatrix matrix);

    static DensityMatrix from_pure(const PureState &s);

    const Layout &layout() const { return layout_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    size_t dimension() const { return matrix_.rows(); }

    DensityMatrix trace_out(const std::vector<std::string> &labels) const;
    DensityMatrix relabeled(Layout layout) const;

   private:
    Layout layout_;
    ComplexMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
/// Convex combination; weights must be nonnegative and sum to 1.
DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);

/// CPTP map rho -> sum_k K rho K^dagger.
class QuantumChannel {
   public:
    /// Throws std::invalid_argument on an empty list, mixed dimensions, or a
    /// trace-preservation residual above kTolerance.
    QuantumChannel(std::string name, std::vector<ComplexMatrix> kraus);

    const std::string &name() const { return name_; }
    std::span<const ComplexMatrix> kraus() const { return kraus_; }
    size_t dimension() const { return kraus_.front().rows(); }

   private:
    std::string name_;
    std::vector<ComplexMatrix> kraus_;
};

/// ||sum_k K^dagger K - I||_F.
double trace_preservation_residual(std::span<const ComplexMatrix> kraus);

/// outer(inner(rho)), with Kraus set {A_i B_j}.
QuantumChannel compose(const QuantumChannel &outer, const QuantumChannel &inner, std::string name);

DensityMatrix apply_channel(const QuantumChannel &channel, const DensityMatrix &rho);

enum class BellState { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PsiMinus, BellState::PsiPlus, BellState::PhiMinus, BellState::PhiPlus};

std::string_view to_string(BellState tag);

/// Psi- = (|01> - |10>)/sqrt2, Psi+ = (|01> + |10>)/sqrt2,
/// Phi- = (|00> - |11>)/sqrt2, Phi+ = (|00> + |11>)/sqrt2.
PureState bell_state(BellState tag, const std::string &first, const std::string &second);

/// (alpha, beta) -> (-conj(beta), conj(alpha)).
PureState orthogonal_qubit(const PureState &phi);

/// |s><s|.
ComplexMatrix projector_onto(const PureState &s);
/// I - |s><s|, extended by identity to every label of `ambient`.
ComplexMatrix complement_projector(const PureState &s, const Layout &ambient);

class DegenerateProjection : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Projection {
    PureState state;
    double probability;
};

/// Projection probabilities below this annihilate the state.
inline constexpr double kDegenerateProbability = 1e-14;

/// (P|s> / ||P|s>||, ||P|s>||^2). Throws DegenerateProjection when the
/// probability is below kDegenerateProbability.
Projection project_and_normalize(const PureState &s, const ComplexMatrix &projector);

/// <target|rho|target>.
double fidelity(const DensityMatrix &rho, const PureState &target);

struct StandardChannels {
    QuantumChannel depolarizing;  ///< {I, X, Y, Z} / 2
    QuantumChannel unot;          ///< {Z, X, Y} / sqrt3
    QuantumChannel sigma_y;       ///< {Y}
    QuantumChannel transpose;     ///< sigma_y o unot
};

const StandardChannels &standard_channels();

/// Haar-random qubit: two iid standard complex Gaussians, normalized.
PureState random_qubit(std::mt19937_64 &rng, std::string label = "S");
/// Haar-random element of SU(2).
ComplexMatrix random_su2(std::mt19937_64 &rng);
/// Two-qubit swap.
ComplexMatrix swap_operator();

}  // namespace tpclone

#endif  // TPCLONE_QCORE_H
