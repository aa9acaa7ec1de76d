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

#include <cmath>
#include <cstdio>
#include <functional>

#include "tpclone/cli.h"
#include "tpclone/protocols.h"

namespace tpclone::cli {

namespace {

using namespace std::complex_literals;
using qmath::frobenius_distance;

constexpr int kSamples = 50;

std::string describe(double deviation, double tolerance) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation %.3g (tolerance %.3g)", deviation, tolerance);
    return buf;
}

ComplexMatrix random_matrix(std::mt19937_64 &rng, size_t rows, size_t cols) {
    std::normal_distribution<double> g;
    std::vector<Complex> e(rows * cols);
    for (auto &x : e) {
        x = {g(rng), g(rng)};
    }
    return {rows, cols, std::move(e)};
}

std::vector<PureState> reference_states() {
    return {PureState::qubit("S", 1, 0), PureState::qubit("S", 1, 1), PureState::qubit("S", 1, 1i)};
}

DensityMatrix conjugated(const ComplexMatrix &u, const DensityMatrix &rho) {
    return {rho.layout(), u * rho.matrix() * qmath::dagger(u)};
}

// Each returns the largest deviation from the expected value.
using Measure = std::function<double()>;

double tensor_associativity() {
    std::mt19937_64 rng(101);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 3), c = random_matrix(rng, 3, 2);
        worst = std::max(worst, frobenius_distance(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
    }
    return worst;
}

double partial_trace_of_product() {
    std::mt19937_64 rng(102);
    double worst = 0;
    auto layout = qmath::qubit_layout({"S", "A"});
    for (int k = 0; k < kSamples; k++) {
        auto a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2);
        auto reduced = qmath::partial_trace(tensor(a, b), layout, {"A"});
        worst = std::max(worst, frobenius_distance(reduced, qmath::trace(b) * a));
    }
    return worst;
}

double state_normalization() {
    std::mt19937_64 rng(103);
    double worst = 0;
    for (int k = 0; k < 4 * kSamples; k++) {
        auto s = apply_unitary(random_su2(rng), random_qubit(rng));
        worst = std::max(worst, std::abs(qmath::norm(s.amplitudes()) - 1));
    }
    for (auto tag : kBellStates) {
        worst = std::max(worst, std::abs(qmath::norm(bell_state(tag, "S", "A").amplitudes()) - 1));
    }
    return worst;
}

double density_conditions(double tolerance) {
    std::mt19937_64 rng(104);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto pair = tensor(random_qubit(rng, "S"), random_qubit(rng, "A"));
        auto check = check_density(DensityMatrix::from_pure(pair).matrix(), tolerance);
        worst = std::max({worst, check.hermiticity_error, check.trace_error, -check.min_sandwich});
    }
    return worst;
}

double channel_trace_preservation() {
    const auto &c = standard_channels();
    double worst = 0;
    for (const auto *ch : {&c.depolarizing, &c.unot, &c.sigma_y, &c.transpose}) {
        worst = std::max(worst, trace_preservation_residual(ch->kraus()));
    }
    return worst;
}

double unot_twirl() {
    std::mt19937_64 rng(105);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto rho = DensityMatrix::from_pure(random_qubit(rng));
        auto expected = (1.0 / 3) * (2.0 * ComplexMatrix::identity(2) - rho.matrix());
        worst = std::max(worst, frobenius_distance(apply_channel(standard_channels().unot, rho).matrix(), expected));
    }
    return worst;
}

double singlet_invariance() {
    std::mt19937_64 rng(106);
    auto singlet = bell_state(BellState::PsiMinus, "A", "B");
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto u = random_su2(rng);
        auto rotated = apply_unitary(tensor(u, u), singlet);
        worst = std::max(worst, std::abs(std::abs(overlap(singlet, rotated)) - 1));
    }
    return worst;
}

double teleport_recovery() {
    std::mt19937_64 rng(107);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto phi = random_qubit(rng);
        std::vector<DensityMatrix> blind;
        std::vector<double> weights;
        for (const auto &o : protocols::standard_teleport(phi)) {
            worst = std::max({worst, std::abs(fidelity(o.bob_state, phi) - 1), std::abs(o.probability - 0.25)});
            blind.push_back(o.bob_uncorrected);
            weights.push_back(o.probability);
        }
        worst = std::max(worst, frobenius_distance(mix(blind, weights).matrix(), 0.5 * ComplexMatrix::identity(2)));
    }
    return worst;
}

double branch_probabilities() {
    std::mt19937_64 rng(108);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto phi = random_qubit(rng);
        for (auto r : {protocols::modified_protocol(phi), protocols::transpose_variant(phi)}) {
            worst = std::max({worst, std::abs(r.p_singlet - 0.25), std::abs(r.p_complement - 0.75)});
        }
    }
    return worst;
}

double clone_fidelities() {
    std::mt19937_64 rng(109);
    auto states = reference_states();
    for (int k = 0; k < kSamples; k++) {
        states.push_back(random_qubit(rng));
    }
    double worst = 0;
    for (const auto &phi : states) {
        auto r = protocols::modified_protocol(phi);
        worst = std::max({worst, std::abs(fidelity(r.rho_S, phi) - 5.0 / 6), std::abs(fidelity(r.rho_A, phi) - 5.0 / 6),
                          std::abs(fidelity(r.rho_B, orthogonal_qubit(phi)) - 2.0 / 3)});
    }
    return worst;
}

double unot_channel_oracle() {
    std::mt19937_64 rng(110);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto phi = random_qubit(rng);
        auto rho_b = protocols::modified_protocol(phi).rho_B.matrix();
        auto channel = apply_channel(standard_channels().unot, DensityMatrix::from_pure(phi)).matrix();
        worst = std::max({worst, frobenius_distance(rho_b, protocols::unot_as_mixture(phi).matrix()),
                          frobenius_distance(rho_b, channel)});
    }
    return worst;
}

double transpose_marginals() {
    std::mt19937_64 rng(111);
    const auto y = pauli(Pauli::Y);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto phi = random_qubit(rng);
        auto plain = protocols::modified_protocol(phi);
        auto t = protocols::transpose_variant(phi);
        auto expected_b = apply_channel(standard_channels().transpose, DensityMatrix::from_pure(phi));
        worst = std::max({worst, frobenius_distance(t.rho_A.matrix(), conjugated(y, plain.rho_A).matrix()),
                          frobenius_distance(t.rho_B.matrix(), expected_b.matrix())});
    }
    return worst;
}

double beamsplitter_unitarity() {
    std::mt19937_64 rng(112);
    double worst = 0;
    for (int k = 0; k < kSamples; k++) {
        auto phi = random_qubit(rng);
        auto anc = random_qubit(rng, "A");
        std::uniform_real_distribution<double> v(0, 1);
        for (const auto &member : photonics::prepare_input(phi, anc, v(rng))) {
            worst = std::max(worst, std::abs(photonics::beamsplitter(member.state).total_probability() - 1));
        }
    }
    return worst;
}

double hom_bunching() {
    const std::array<Complex, 2> h{1.0, 0.0};
    auto in = photonics::TwoPhotonState::product({photonics::Spatial::InS, h, h}, {photonics::Spatial::InA, h, h});
    auto out = photonics::beamsplitter(in);
    double split = 0;
    for (const auto &[key, value] : out.terms()) {
        if (photonics::ModeKey::from_index(key.first).spatial != photonics::ModeKey::from_index(key.second).spatial) {
            split += std::norm(value);
        }
    }
    return std::max(split, std::abs(photonics::postselect_double_out1(out).probability - 0.5));
}

double clone_density_equivalence() {
    double worst = 0;
    for (const auto &phi : reference_states()) {
        auto photonic = photonics::postselected_polarization(phi, photonics::MixedHV{}, 1.0);
        worst = std::max(worst, frobenius_distance(photonic.matrix(), protocols::cloning_density_reference(phi).matrix()));
    }
    return worst;
}

double enhancement_ratio() {
    double worst = 0;
    for (const auto &phi : reference_states()) {
        auto on = photonics::exact_point(phi, photonics::MixedHV{}, 1.0);
        auto off = photonics::exact_point(phi, photonics::MixedHV{}, 0.0);
        worst = std::max({worst, std::abs(on.p_A1A2 / off.p_A1A2 - 2), std::abs(on.p_A2B - off.p_A2B)});
    }
    return worst;
}

double fidelity_chain() {
    double worst = 0;
    for (const auto &phi : reference_states()) {
        for (double v : {0.0, 0.3, 0.8902, 1.0}) {
            auto marginal = photonics::postselected_polarization(phi, photonics::MixedHV{}, v).trace_out({"A"});
            double f = photonics::fidelity_from_R(photonics::enhancement_ratio(phi, v));
            worst = std::max(worst, std::abs(fidelity(marginal, phi) - f));
        }
    }
    return worst;
}

double thread_independence() {
    auto phi = PureState::qubit("S", 1, 1);
    std::vector<double> z{-40, 0, 40};
    photonics::ScanOptions options;
    options.mode = photonics::ScanMode::MonteCarlo;
    options.trials = 30000;
    options.seed = 5;
    auto one = photonics::hom_scan(phi, z, options);
    options.threads = 4;
    auto four = photonics::hom_scan(phi, z, options);
    double worst = 0;
    for (size_t k = 0; k < z.size(); k++) {
        worst = std::max({worst, std::abs(static_cast<double>(one[k].n_A1A2) - static_cast<double>(four[k].n_A1A2)),
                          std::abs(static_cast<double>(one[k].n_A2B) - static_cast<double>(four[k].n_A2B))});
    }
    return worst;
}

double csv_round_trip() {
    std::mt19937_64 rng(113);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    for (int k = 0; k < 4 * kSamples; k++) {
        double x = u(rng) * std::pow(10.0, k % 12 - 6);
        worst = std::max(worst, std::abs(std::strtod(format_number(x).c_str(), nullptr) - x));
    }
    return worst;
}

double state_specs() {
    double worst = 0;
    const std::pair<const char *, const char *> same[] = {
        {"theta=0,phi=0", "H"}, {"theta=180,phi=0", "V"}, {"theta=90,phi=0", "+"},
        {"theta=90,phi=180", "-"}, {"theta=90,phi=90", "R"}, {"theta=90,phi=-90", "L"},
    };
    for (const auto &[angles, name] : same) {
        worst = std::max(worst, 1 - std::abs(overlap(parse_state(angles), parse_state(name))));
    }
    return worst;
}

}  // namespace

std::vector<Check> selftest(double tolerance) {
    const std::pair<const char *, Measure> measures[] = {
        {"qmath.tensor_associativity", tensor_associativity},
        {"qmath.partial_trace_of_product", partial_trace_of_product},
        {"qcore.state_normalization", state_normalization},
        {"qcore.density_conditions", [tolerance] { return density_conditions(tolerance); }},
        {"qcore.channel_trace_preservation", channel_trace_preservation},
        {"qcore.unot_twirl", unot_twirl},
        {"qcore.singlet_su2_invariance", singlet_invariance},
        {"protocols.teleport_recovery", teleport_recovery},
        {"protocols.branch_probabilities", branch_probabilities},
        {"protocols.clone_and_unot_fidelities", clone_fidelities},
        {"protocols.unot_channel_oracle", unot_channel_oracle},
        {"protocols.transpose_marginals", transpose_marginals},
        {"photonics.beamsplitter_unitarity", beamsplitter_unitarity},
        {"photonics.hom_bunching", hom_bunching},
        {"photonics.clone_density_equivalence", clone_density_equivalence},
        {"photonics.enhancement_ratio", enhancement_ratio},
        {"photonics.fidelity_chain", fidelity_chain},
        {"photonics.monte_carlo_thread_independence", thread_independence},
        {"cli.csv_round_trip", csv_round_trip},
        {"cli.state_specs", state_specs},
    };
    std::vector<Check> checks;
    for (const auto &[name, measure] : measures) {
        try {
            double deviation = measure();
            checks.push_back({name, deviation <= tolerance, describe(deviation, tolerance)});
        } catch (const std::exception &e) {
            checks.push_back({name, false, std::string("threw: ") + e.what()});
        }
    }
    return checks;
}

}  // namespace tpclone::cli
