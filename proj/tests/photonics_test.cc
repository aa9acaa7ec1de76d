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

#include "tpclone/photonics.h"

#include "gtest/gtest.h"
#include "oracles.h"
#include "tpclone/protocols.h"

using namespace tpclone;
using namespace tpclone::photonics;
using namespace std::complex_literals;
using qmath::frobenius_distance;

namespace {

constexpr double kC = 0.299792458;  // um / fs

const std::array<Complex, 2> kMatched{1.0, 0.0};
const std::array<Complex, 2> kH{1.0, 0.0};
const std::array<Complex, 2> kV{0.0, 1.0};

std::vector<PureState> reference_states() {
    return {PureState::qubit("S", 1, 0), PureState::qubit("S", 1, 1), PureState::qubit("S", 1, 1i)};
}

oracle::Qubit raw(const PureState &s) { return {s.amplitudes()[0], s.amplitudes()[1]}; }

std::array<Complex, 2> pol(const PureState &s) { return {s.amplitudes()[0], s.amplitudes()[1]}; }

double out1_pair_probability(const TwoPhotonState &s) {
    double p = 0;
    for (const auto &[key, value] : s.terms()) {
        if (ModeKey::from_index(key.first).spatial == Spatial::Out1 &&
            ModeKey::from_index(key.second).spatial == Spatial::Out1) {
            p += std::norm(value);
        }
    }
    return p;
}

double split_probability(const TwoPhotonState &s) {
    double p = 0;
    for (const auto &[key, value] : s.terms()) {
        if (ModeKey::from_index(key.first).spatial != ModeKey::from_index(key.second).spatial) {
            p += std::norm(value);
        }
    }
    return p;
}

}  // namespace

TEST(photonics, mode_key_round_trip) {
    for (size_t k = 0; k < kModeCount; k++) {
        ASSERT_EQ(ModeKey::from_index(k).index(), k);
    }
    ASSERT_THROW(ModeKey::from_index(kModeCount), std::out_of_range);
}

TEST(photonics, visibility_model) {
    ASSERT_EQ(visibility_model(0, 80), 1.0);
    ASSERT_LT(visibility_model(10 * kC * 80, 80), 1e-10);
    for (double z : {3.0, 17.5, 48.0, 120.0}) {
        ASSERT_EQ(visibility_model(z, 80), visibility_model(-z, 80));
        ASSERT_GT(visibility_model(z, 80), visibility_model(z + 1, 80));
    }
    // z = 2 c dt: dt = tau gives 1/e.
    ASSERT_NEAR(visibility_model(2 * kC * 80, 80), std::exp(-1.0), 1e-15);
    ASSERT_THROW(visibility_model(1, 0), std::invalid_argument);
    ASSERT_THROW(visibility_model(1, -5), std::invalid_argument);
    ASSERT_NEAR(visibility_model(stage_for_visibility(0.37, 80), 80), 0.37, 1e-14);
}

TEST(photonics, prepare_input) {
    auto h = PureState::qubit("S", 1, 0);
    auto single = prepare_input(h, h, 1.0);
    ASSERT_EQ(single.size(), 1u);
    ASSERT_EQ(single[0].weight, 1.0);
    const auto &terms = single[0].state.terms();
    ASSERT_EQ(terms.size(), 1u);
    ASSERT_NEAR(std::abs(single[0].state.amplitude({Spatial::InS, Polarization::H, Temporal::Matched},
                                                   {Spatial::InA, Polarization::H, Temporal::Matched})),
                1, 1e-15);

    auto distinguishable = prepare_input(h, h, 0.0);
    ASSERT_NEAR(std::abs(distinguishable[0].state.amplitude({Spatial::InS, Polarization::H, Temporal::Matched},
                                                            {Spatial::InA, Polarization::H, Temporal::Orthogonal})),
                1, 1e-15);

    auto mixed = prepare_input(h, MixedHV{}, 0.5);
    ASSERT_EQ(mixed.size(), 2u);
    ASSERT_EQ(mixed[0].weight, 0.5);
    ASSERT_EQ(mixed[1].weight, 0.5);

    ASSERT_THROW(prepare_input(h, MixedHV{}, 1.5), std::invalid_argument);
    ASSERT_THROW(prepare_input(h, MixedHV{}, -0.1), std::invalid_argument);
}

TEST(photonics, hom_bunching_of_identical_photons) {
    auto in = TwoPhotonState::product({Spatial::InS, kH, kMatched}, {Spatial::InA, kH, kMatched});
    auto out = beamsplitter(in);
    ASSERT_LT(split_probability(out), 1e-30);
    ASSERT_NEAR(out.total_probability(), 1, 1e-12);
    auto post = postselect_double_out1(out);
    ASSERT_NEAR(post.probability, 0.5, 1e-12);
}

TEST(photonics, polarization_singlet_antibunches) {
    const Complex h = 1 / std::sqrt(2.0);
    std::vector<std::tuple<Complex, PhotonMode, PhotonMode>> terms{
        {h, {Spatial::InS, kH, kMatched}, {Spatial::InA, kV, kMatched}},
        {-h, {Spatial::InS, kV, kMatched}, {Spatial::InA, kH, kMatched}},
    };
    auto in = TwoPhotonState::superposition(terms);
    auto out = beamsplitter(in);
    ASSERT_NEAR(split_probability(out), 1, 1e-12);
    ASSERT_THROW(postselect_double_out1(out), DegeneratePostselection);
}

TEST(photonics, distinguishable_photons_follow_classical_statistics) {
    // Oracle: independent 50:50 routing, both in out_1 with probability 1/4.
    auto in = TwoPhotonState::product({Spatial::InS, kH, kMatched}, {Spatial::InA, kH, {0.0, 1.0}});
    auto out = beamsplitter(in);
    ASSERT_NEAR(out1_pair_probability(out), 0.25, 1e-12);
    ASSERT_NEAR(split_probability(out), 0.5, 1e-12);

    auto phi = PureState::qubit("S", 1, 1i);
    auto point = exact_point(phi, MixedHV{}, 0.0);
    ASSERT_NEAR(point.p_post, 0.25, 1e-12);
}

TEST(photonics, beamsplitter_preserves_probability) {
    std::mt19937_64 rng(30);
    std::normal_distribution<double> g;
    auto random_pair = [&] {
        auto p = random_qubit(rng);
        auto t = random_qubit(rng);
        return std::pair{pol(p), std::array<Complex, 2>{t.amplitudes()[0], t.amplitudes()[1]}};
    };
    for (int k = 0; k < 50; k++) {
        std::vector<std::tuple<Complex, PhotonMode, PhotonMode>> terms;
        for (int j = 0; j < 3; j++) {
            auto [p1, t1] = random_pair();
            auto [p2, t2] = random_pair();
            Spatial s1 = (j % 2 == 0) ? Spatial::InS : Spatial::InA;
            terms.push_back({Complex(g(rng), g(rng)), {s1, p1, t1}, {Spatial::InA, p2, t2}});
        }
        auto in = TwoPhotonState::superposition(terms);
        ASSERT_NEAR(in.total_probability(), 1, 1e-12);
        ASSERT_NEAR(beamsplitter(in).total_probability(), 1, 1e-10);
    }
}

TEST(photonics, beamsplitter_rejects_non_input_modes) {
    auto s = TwoPhotonState::product({Spatial::Out1, kH, kMatched}, {Spatial::InA, kH, kMatched});
    ASSERT_THROW(beamsplitter(s), std::invalid_argument);
    auto in = TwoPhotonState::product({Spatial::InS, kH, kMatched}, {Spatial::InA, kH, kMatched});
    ASSERT_THROW(postselect_double_out1(in), std::invalid_argument);
}

TEST(photonics, wavefunction_is_exchange_symmetric) {
    auto phi = PureState::qubit("S", 2, 1i);
    auto state = beamsplitter(prepare_input(phi, MixedHV{}, 0.4)[1].state);
    auto psi = state.wavefunction();
    double norm = 0;
    for (size_t k = 0; k < kModeCount; k++) {
        for (size_t l = 0; l < kModeCount; l++) {
            ASSERT_EQ(psi[k * kModeCount + l], psi[l * kModeCount + k]);
            norm += std::norm(psi[k * kModeCount + l]);
        }
    }
    ASSERT_NEAR(norm, 1, 1e-12);
}

TEST(photonics, analyze_mode1_routing) {
    auto phi = PureState::qubit("S", 1, 1i);
    auto perp = orthogonal_qubit(phi);
    auto twin = TwoPhotonState::product({Spatial::Out1, pol(phi), kMatched}, {Spatial::Out1, pol(phi), kMatched});
    auto a = analyze_mode1(twin, phi);
    ASSERT_NEAR(a.p_A1A2, 0.5, 1e-12);
    ASSERT_NEAR(a.p_A2B, 0, 1e-12);

    auto one_each =
        TwoPhotonState::product({Spatial::Out1, pol(phi), kMatched}, {Spatial::Out1, pol(perp), kMatched});
    auto b = analyze_mode1(one_each, phi);
    ASSERT_NEAR(b.p_A1A2, 0, 1e-12);
    ASSERT_NEAR(b.p_A2B, 0.5, 1e-12);

    // Distinguishable temporal labels do not change the routing statistics.
    auto twin_dist =
        TwoPhotonState::product({Spatial::Out1, pol(phi), kMatched}, {Spatial::Out1, pol(phi), {0.0, 1.0}});
    ASSERT_NEAR(analyze_mode1(twin_dist, phi).p_A1A2, 0.5, 1e-12);

    auto outside = TwoPhotonState::product({Spatial::Out1, kH, kMatched}, {Spatial::Out2, kH, kMatched});
    ASSERT_THROW(analyze_mode1(outside, phi), std::invalid_argument);
}

TEST(photonics, exact_pipeline_matches_first_quantized_oracle) {
    std::mt19937_64 rng(31);
    auto states = reference_states();
    for (int k = 0; k < 5; k++) {
        states.push_back(random_qubit(rng));
    }
    for (const auto &phi : states) {
        for (double v : {0.0, 0.25, 0.6, 1.0}) {
            auto point = exact_point(phi, MixedHV{}, v);
            auto h = oracle::photonic_point(raw(phi), {1.0, 0.0}, v);
            auto vv = oracle::photonic_point(raw(phi), {0.0, 1.0}, v);
            ASSERT_NEAR(point.p_post, 0.5 * (h.p_post + vv.p_post), 1e-12);
            ASSERT_NEAR(point.p_A1A2, 0.5 * (h.p_A1A2 + vv.p_A1A2), 1e-12);
            ASSERT_NEAR(point.p_A2B, 0.5 * (h.p_A2B + vv.p_A2B), 1e-12);
            // Closed forms confirmed by the oracle.
            ASSERT_NEAR(point.p_post, (2 + v) / 8, 1e-12);
            ASSERT_NEAR(point.p_A1A2, (1 + v) / 16, 1e-12);
            ASSERT_NEAR(point.p_A2B, 1.0 / 16, 1e-12);
        }
        // Fixed (pure) ancilla.
        auto anc = random_qubit(rng, "A");
        auto point = exact_point(phi, anc, 0.7);
        auto o = oracle::photonic_point(raw(phi), raw(anc), 0.7);
        ASSERT_NEAR(point.p_post, o.p_post, 1e-12);
        ASSERT_NEAR(point.p_A1A2, o.p_A1A2, 1e-12);
        ASSERT_NEAR(point.p_A2B, o.p_A2B, 1e-12);
    }
}

TEST(photonics, postselected_polarization_matches_oracle) {
    std::mt19937_64 rng(32);
    for (int k = 0; k < 5; k++) {
        auto phi = random_qubit(rng);
        auto anc = random_qubit(rng, "A");
        auto rho = postselected_polarization(phi, anc, 0.35);
        auto o = oracle::photonic_point(raw(phi), raw(anc), 0.35);
        for (size_t i = 0; i < 4; i++) {
            for (size_t j = 0; j < 4; j++) {
                ASSERT_NEAR(std::abs(rho.matrix()(i, j) - o.rho_pol[i][j] / o.p_post), 0, 1e-12);
            }
        }
    }
}

TEST(photonics, postselected_state_equals_algebraic_clone_state) {
    for (const auto &phi : reference_states()) {
        auto photonic = postselected_polarization(phi, MixedHV{}, 1.0);
        auto algebraic = protocols::mixed_ancilla_clone(phi).rho_SA;
        ASSERT_LT(frobenius_distance(photonic.matrix(), algebraic.matrix()), 1e-10);
        ASSERT_LT(frobenius_distance(photonic.matrix(), protocols::cloning_density_reference(phi).matrix()), 1e-10);
    }
}

TEST(photonics, marginal_fidelity_follows_ratio_formula) {
    std::mt19937_64 rng(33);
    auto states = reference_states();
    states.push_back(random_qubit(rng));
    for (const auto &phi : states) {
        auto f1 = fidelity(postselected_polarization(phi, MixedHV{}, 1.0).trace_out({"A"}), phi);
        auto f0 = fidelity(postselected_polarization(phi, MixedHV{}, 0.0).trace_out({"A"}), phi);
        ASSERT_NEAR(f1, 5.0 / 6, 1e-12);
        ASSERT_NEAR(f0, 0.75, 1e-12);
        for (double v : {0.2, 0.5, 0.9}) {
            auto f = fidelity(postselected_polarization(phi, MixedHV{}, v).trace_out({"A"}), phi);
            ASSERT_NEAR(f, fidelity_from_R(enhancement_ratio(phi, v)), 1e-12);
        }
    }
}

TEST(photonics, enhancement_ratio) {
    for (const auto &phi : reference_states()) {
        auto on = exact_point(phi, MixedHV{}, 1.0);
        auto off = exact_point(phi, MixedHV{}, 0.0);
        ASSERT_NEAR(on.p_A1A2 / off.p_A1A2, 2, 1e-12);
        ASSERT_NEAR(on.p_A2B / off.p_A2B, 1, 1e-12);
        ASSERT_NEAR(off.p_A1A2, off.p_A2B, 1e-15);
        for (double v : {0.0, 0.1, 0.5, 0.8902}) {
            ASSERT_NEAR(enhancement_ratio(phi, v), 1 + v, 1e-12);
        }
        ASSERT_NEAR(visibility_for_ratio(phi, 1.5), 0.5, 1e-12);
    }
    ASSERT_THROW(visibility_for_ratio(reference_states()[0], 2.5), std::domain_error);
}

TEST(photonics, fidelity_from_ratio) {
    ASSERT_NEAR(fidelity_from_R(2), 5.0 / 6, 1e-15);
    ASSERT_NEAR(fidelity_from_R(1), 0.75, 1e-15);
    ASSERT_NEAR(fidelity_from_R(1.890), 0.827, 1e-4);
    ASSERT_NEAR(R_from_fidelity(0.827), 0.654 / 0.346, 1e-12);
    ASSERT_NEAR(fidelity_from_R(R_from_fidelity(0.827)), 0.827, 1e-14);
    ASSERT_THROW(fidelity_from_R(0.9), std::domain_error);
}

TEST(photonics, extract_R) {
    CoincidenceRecord peak{.z_um = 0, .visibility = 1, .p_A1A2 = 0.125, .p_A2B = 0.0625};
    CoincidenceRecord base{.z_um = 1e9, .visibility = 0, .p_A1A2 = 0.0625, .p_A2B = 0.0625};
    ASSERT_EQ(extract_R(peak, base), 2.0);
    ASSERT_EQ(extract_R(base, base), 1.0);
    CoincidenceRecord zero{};
    ASSERT_THROW(extract_R(peak, zero), std::domain_error);
    ASSERT_THROW(extract_R(peak, zero, RatioSource::Counts), std::domain_error);

    CoincidenceRecord pc{.n_A1A2 = 250, .trials = 1000};
    CoincidenceRecord bc{.n_A1A2 = 100, .trials = 800};
    ASSERT_DOUBLE_EQ(extract_R(pc, bc, RatioSource::Counts), 2.0);
}

TEST(photonics, exact_hom_scan) {
    std::vector<double> z;
    for (int k = 0; k < 49; k++) {
        z.push_back(-120 + 5.0 * k);
    }
    ScanOptions options;
    std::vector<std::vector<CoincidenceRecord>> scans;
    for (const auto &phi : reference_states()) {
        auto records = hom_scan(phi, z, options);
        ASSERT_EQ(records.size(), z.size());
        const auto &peak = peak_record(records);
        ASSERT_EQ(peak.z_um, 0.0);
        auto base = baseline_record(phi, options, z.size());
        ASSERT_NEAR(extract_R(peak, base), 2, 1e-12);
        for (const auto &r : records) {
            ASSERT_NEAR(r.p_A2B, records.front().p_A2B, 1e-12);
            ASSERT_LE(r.p_A1A2, peak.p_A1A2);
            ASSERT_EQ(r.trials, 0u);
        }
        scans.push_back(records);
    }
    for (size_t k = 0; k < z.size(); k++) {
        ASSERT_NEAR(scans[0][k].p_A1A2, scans[1][k].p_A1A2, 1e-12);
        ASSERT_NEAR(scans[0][k].p_A1A2, scans[2][k].p_A1A2, 1e-12);
    }
    ASSERT_THROW(hom_scan(reference_states()[0], std::vector<double>{}, options), std::invalid_argument);
}
