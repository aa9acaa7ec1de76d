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

#ifndef TPCLONE_PHOTONICS_H
#define TPCLONE_PHOTONICS_H

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "tpclone/qcore.h"

/// Two-photon linear-optics model of the beamsplitter cloning experiment.
///
/// A single-photon basis mode is (spatial port, polarization, temporal
/// mode). Temporal distinguishability is carried by a two-element basis
/// {matched, orthogonal}; the pairwise overlap of the two photons'
/// temporal states squared is the HOM visibility v.
namespace tpclone::photonics {

enum class Spatial : uint8_t { InS, InA, Out1, Out2, DetA1, DetA2, DetB };
enum class Polarization : uint8_t { H, V };
enum class Temporal : uint8_t { Matched, Orthogonal };

inline constexpr size_t kSpatialCount = 7;
inline constexpr size_t kModeCount = kSpatialCount * 2 * 2;

std::string_view to_string(Spatial s);

struct ModeKey {
    Spatial spatial = Spatial::InS;
    Polarization polarization = Polarization::H;
    Temporal temporal = Temporal::Matched;

    size_t index() const;
    static ModeKey from_index(size_t index);
    auto operator<=>(const ModeKey &) const = default;
};

/// One photon in a spatial port with a polarization qubit and a temporal
/// superposition. Both amplitude pairs are normalized.
struct PhotonMode {
    Spatial spatial;
    std::array<Complex, 2> polarization;  ///< over {H, V}
    std::array<Complex, 2> temporal;      ///< over {matched, orthogonal}

    /// Throws std::invalid_argument unless both pairs have unit norm.
    void validate() const;
    /// Amplitude on each of the kModeCount basis modes.
    std::vector<Complex> expand() const;
};

/// Two-photon state in the normalized Fock basis.
///
/// Keys are unordered mode pairs (first <= second). A key {k, k} is the
/// state (a_k^dagger)^2 / sqrt2 |0>; any other key is a_k^dagger a_l^dagger |0>.
/// The total probability is the plain sum of |amplitude|^2.
class TwoPhotonState {
   public:
    using Pattern = std::pair<size_t, size_t>;

    /// a^dagger b^dagger |0>, normalized.
    static TwoPhotonState product(const PhotonMode &a, const PhotonMode &b);
    /// sum_k c_k a_k^dagger b_k^dagger |0>, normalized.
    static TwoPhotonState superposition(std::span<const std::tuple<Complex, PhotonMode, PhotonMode>> terms);
    /// Wraps raw Fock amplitudes without renormalizing.
    static TwoPhotonState from_terms(std::map<Pattern, Complex> terms);

    const std::map<Pattern, Complex> &terms() const { return terms_; }
    double total_probability() const;
    /// Amplitude of the pattern {a, b} (order irrelevant).
    Complex amplitude(ModeKey a, ModeKey b) const;
    /// True if every photon of every nonzero term sits in `allowed`.
    bool occupies_only(std::initializer_list<Spatial> allowed) const;

    /// Applies the single-photon mode map `u` (column j = image of mode j)
    /// to both photons.
    TwoPhotonState transform(const ComplexMatrix &u) const;
    TwoPhotonState normalized() const;

    /// Symmetric first-quantized wavefunction psi(k, l) over kModeCount^2.
    std::vector<Complex> wavefunction() const;

   private:
    explicit TwoPhotonState(std::map<Pattern, Complex> terms) : terms_(std::move(terms)) {}
    std::map<Pattern, Complex> terms_;
};

/// Converts a stage setting (micrometers) to a delay in femtoseconds:
/// z = 2 c dt.
double delay_fs(double z_um);

/// exp(-(dt / tau_coh)^2) with dt = z / (2c). Throws on tau_coh <= 0.
double visibility_model(double z_um, double tau_coh_fs);

/// Inverse of visibility_model on z >= 0.
double stage_for_visibility(double v, double tau_coh_fs);

struct MixedHV {};
using Ancilla = std::variant<MixedHV, PureState>;

struct WeightedState {
    double weight;
    TwoPhotonState state;
};

/// Photon S: (in_S, phi, matched). Photon A: (in_A, ancilla polarization,
/// sqrt(v) matched + sqrt(1-v) orthogonal). MixedHV yields the equal-weight
/// ensemble {H, V}. Throws on v outside [0, 1].
std::vector<WeightedState> prepare_input(const PureState &phi, const Ancilla &ancilla, double v);

/// 50:50 beamsplitter: in_S -> (out_1 + out_2)/sqrt2, in_A -> (out_1 - out_2)/sqrt2.
/// Throws std::invalid_argument if any photon is outside the input ports.
TwoPhotonState beamsplitter(const TwoPhotonState &state);

class DegeneratePostselection : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Postselected {
    TwoPhotonState state;
    double probability;
};

/// Keeps the terms with both photons in out_1 and renormalizes.
Postselected postselect_double_out1(const TwoPhotonState &state);

struct Mode1Analysis {
    double p_A1A2;
    double p_A2B;
};

/// Analyzer cascade on out_1: WP_C maps phi -> H, PBS_C transmits H to
/// the 50:50 splitter BS_C (det_A1 / det_A2) and reflects V to det_B.
/// Probabilities are conditional on the input state.
Mode1Analysis analyze_mode1(const TwoPhotonState &state, const PureState &phi);

/// Two-qubit polarization density matrix of the two photons, labeled S
/// and A by photon slot, with spatial and temporal labels traced out.
DensityMatrix polarization_density(const TwoPhotonState &state);

struct ExactPoint {
    double visibility;
    double p_post;  ///< probability that both photons leave through out_1
    double p_A1A2;  ///< unconditional [D_A1, D_A2] coincidence probability
    double p_A2B;   ///< unconditional [D_A2, D_B] coincidence probability
};

/// Full pipeline at visibility v, ensemble averaged at the probability level.
ExactPoint exact_point(const PureState &phi, const Ancilla &ancilla, double v);

/// Post-selected out_1 polarization state, ensemble averaged.
DensityMatrix postselected_polarization(const PureState &phi, const Ancilla &ancilla, double v);

struct CoincidenceRecord {
    double z_um = 0;
    double visibility = 0;
    double p_A1A2 = 0;
    double p_A2B = 0;
    uint64_t n_A1A2 = 0;
    uint64_t n_A2B = 0;
    uint64_t trials = 0;
};

enum class ScanMode { Exact, MonteCarlo };

struct ScanOptions {
    ScanMode mode = ScanMode::Exact;
    double tau_coh_fs = 80.0;
    uint64_t trials = 0;  ///< per z-point, Monte Carlo only
    uint64_t seed = 0;
    unsigned threads = 1;  ///< does not affect results
};

/// Name of the Monte Carlo generator, for provenance records.
inline constexpr std::string_view kGeneratorName = "mt19937_64 streams seeded by splitmix64(seed, point, chunk)";
/// Trials per independent RNG stream.
inline constexpr uint64_t kTrialsPerChunk = 8192;

/// Scan over stage settings with the mixed ancilla. Probabilities are the
/// exact unconditional coincidence probabilities in both modes; Monte Carlo
/// mode also fills counts and trials. Throws on an empty z list or zero
/// trials in Monte Carlo mode.
std::vector<CoincidenceRecord> hom_scan(const PureState &phi, std::span<const double> z_values,
                                        const ScanOptions &options);

/// The "machine off" reference (v = 0, fully distinguishable photons).
/// Monte Carlo mode draws from the RNG stream at `point_index`.
CoincidenceRecord baseline_record(const PureState &phi, const ScanOptions &options, uint64_t point_index);

/// Record with the highest visibility.
const CoincidenceRecord &peak_record(std::span<const CoincidenceRecord> records);

enum class RatioSource { Probability, Counts };

/// p_A1A2(peak) / p_A1A2(baseline), or the ratio of count rates. Throws
/// std::domain_error on a zero baseline.
double extract_R(const CoincidenceRecord &peak, const CoincidenceRecord &baseline,
                 RatioSource source = RatioSource::Probability);

/// (2R + 1) / (2R + 2). Throws std::domain_error for R < 1.
double fidelity_from_R(double r);
/// Inverse of fidelity_from_R.
double R_from_fidelity(double f);

/// p_A1A2(v) / p_A1A2(0) from the exact engine.
double enhancement_ratio(const PureState &phi, double v);
/// Visibility at which enhancement_ratio equals r, by bisection on [0, 1].
double visibility_for_ratio(const PureState &phi, double r);

}  // namespace tpclone::photonics

#endif  // TPCLONE_PHOTONICS_H
