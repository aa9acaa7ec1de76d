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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

namespace tpclone::photonics {

namespace {

constexpr double kSpeedOfLightUmPerFs = 0.299792458;
const double kInvSqrt2 = 1 / std::sqrt(2.0);

// Amplitudes below this are treated as exact cancellations.
constexpr double kNegligible = 1e-14;

std::array<Complex, 2> qubit_pair(const PureState &s, const char *where) {
    if (s.dimension() != 2 || s.layout().size() != 1) {
        throw std::invalid_argument(std::string(where) + ": expected a single-qubit polarization state");
    }
    return {s.amplitudes()[0], s.amplitudes()[1]};
}

void accumulate(std::map<TwoPhotonState::Pattern, Complex> &creation, size_t k, size_t l, Complex c) {
    creation[{std::min(k, l), std::max(k, l)}] += c;
}

// Creation-operator coefficients -> normalized Fock amplitudes.
std::map<TwoPhotonState::Pattern, Complex> creation_to_fock(const std::map<TwoPhotonState::Pattern, Complex> &d) {
    std::map<TwoPhotonState::Pattern, Complex> c;
    for (const auto &[key, value] : d) {
        Complex amp = key.first == key.second ? value * std::sqrt(2.0) : value;
        if (std::abs(amp) > 1e-300) {
            c[key] = amp;
        }
    }
    return c;
}

Spatial spatial_of(size_t mode) { return ModeKey::from_index(mode).spatial; }

uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t stream_seed(uint64_t master, uint64_t point, uint64_t chunk) {
    uint64_t s = master;
    uint64_t a = splitmix64(s);
    s = a ^ (point * 0xd1b54a32d192ed03ULL);
    uint64_t b = splitmix64(s);
    s = b ^ (chunk * 0x8cb92ba72f3d8dd7ULL);
    return splitmix64(s);
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Per-ensemble-member outcome probabilities for one stage setting.
struct MemberOutcomes {
    double weight;
    double p_A1A2;
    double p_A2B;
};

std::vector<MemberOutcomes> member_outcomes(const PureState &phi, const Ancilla &ancilla, double v) {
    std::vector<MemberOutcomes> out;
    for (const auto &member : prepare_input(phi, ancilla, v)) {
        auto split = beamsplitter(member.state);
        MemberOutcomes m{member.weight, 0, 0};
        try {
            auto post = postselect_double_out1(split);
            auto a = analyze_mode1(post.state, phi);
            m.p_A1A2 = post.probability * a.p_A1A2;
            m.p_A2B = post.probability * a.p_A2B;
        } catch (const DegeneratePostselection &) {
            // No double occupation of out_1: no coincidences from this member.
        }
        out.push_back(m);
    }
    return out;
}

struct Tally {
    uint64_t n_A1A2 = 0;
    uint64_t n_A2B = 0;
};

Tally sample_chunk(const std::vector<MemberOutcomes> &members, uint64_t trials, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (uint64_t k = 0; k < trials; k++) {
        // Stochastic waveplate: pick the ancilla polarization, then the detection event.
        double u = uniform01(rng);
        size_t m = 0;
        double acc = members[0].weight;
        while (u >= acc && m + 1 < members.size()) {
            acc += members[++m].weight;
        }
        double w = uniform01(rng);
        if (w < members[m].p_A1A2) {
            t.n_A1A2++;
        } else if (w < members[m].p_A1A2 + members[m].p_A2B) {
            t.n_A2B++;
        }
    }
    return t;
}

// Monte Carlo tallies for several points; point i uses stream index first_index + i.
std::vector<Tally> sample_points(const std::vector<std::vector<MemberOutcomes>> &points, const ScanOptions &options,
                                 uint64_t first_index) {
    uint64_t chunks = (options.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    struct Task {
        size_t point;
        uint64_t chunk;
    };
    std::vector<Task> tasks;
    for (size_t p = 0; p < points.size(); p++) {
        for (uint64_t c = 0; c < chunks; c++) {
            tasks.push_back({p, c});
        }
    }
    std::vector<Tally> partial(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            const auto &task = tasks[i];
            uint64_t n = std::min(kTrialsPerChunk, options.trials - task.chunk * kTrialsPerChunk);
            partial[i] = sample_chunk(points[task.point], n,
                                      stream_seed(options.seed, first_index + task.point, task.chunk));
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; k++) {
            pool.emplace_back(worker);
        }
    }
    std::vector<Tally> out(points.size());
    for (size_t i = 0; i < tasks.size(); i++) {
        out[tasks[i].point].n_A1A2 += partial[i].n_A1A2;
        out[tasks[i].point].n_A2B += partial[i].n_A2B;
    }
    return out;
}

CoincidenceRecord exact_record(double z, double v, const std::vector<MemberOutcomes> &members) {
    CoincidenceRecord r;
    r.z_um = z;
    r.visibility = v;
    for (const auto &m : members) {
        r.p_A1A2 += m.weight * m.p_A1A2;
        r.p_A2B += m.weight * m.p_A2B;
    }
    return r;
}

void require_trials(const ScanOptions &options) {
    if (options.mode == ScanMode::MonteCarlo && options.trials == 0) {
        throw std::invalid_argument("hom_scan: Monte Carlo mode needs trials >= 1");
    }
}

}  // namespace

std::string_view to_string(Spatial s) {
    switch (s) {
        case Spatial::InS:
            return "in_S";
        case Spatial::InA:
            return "in_A";
        case Spatial::Out1:
            return "out_1";
        case Spatial::Out2:
            return "out_2";
        case Spatial::DetA1:
            return "det_A1";
        case Spatial::DetA2:
            return "det_A2";
        case Spatial::DetB:
            return "det_B";
    }
    return "?";
}

size_t ModeKey::index() const {
    return (static_cast<size_t>(spatial) * 2 + static_cast<size_t>(polarization)) * 2 + static_cast<size_t>(temporal);
}

ModeKey ModeKey::from_index(size_t index) {
    if (index >= kModeCount) {
        throw std::out_of_range("ModeKey: index out of range");
    }
    return {static_cast<Spatial>(index / 4), static_cast<Polarization>((index / 2) % 2),
            static_cast<Temporal>(index % 2)};
}

void PhotonMode::validate() const {
    auto unit = [](const std::array<Complex, 2> &p) {
        return std::abs(std::norm(p[0]) + std::norm(p[1]) - 1) <= kTolerance;
    };
    if (!unit(polarization)) {
        throw std::invalid_argument("PhotonMode: polarization amplitudes are not normalized");
    }
    if (!unit(temporal)) {
        throw std::invalid_argument("PhotonMode: temporal amplitudes are not normalized");
    }
}

std::vector<Complex> PhotonMode::expand() const {
    validate();
    std::vector<Complex> amps(kModeCount);
    for (size_t p = 0; p < 2; p++) {
        for (size_t t = 0; t < 2; t++) {
            ModeKey key{spatial, static_cast<Polarization>(p), static_cast<Temporal>(t)};
            amps[key.index()] = polarization[p] * temporal[t];
        }
    }
    return amps;
}

TwoPhotonState TwoPhotonState::product(const PhotonMode &a, const PhotonMode &b) {
    std::tuple<Complex, PhotonMode, PhotonMode> term{1.0, a, b};
    return superposition(std::span(&term, 1));
}

TwoPhotonState TwoPhotonState::superposition(std::span<const std::tuple<Complex, PhotonMode, PhotonMode>> terms) {
    std::map<Pattern, Complex> creation;
    for (const auto &[c, a, b] : terms) {
        auto ea = a.expand();
        auto eb = b.expand();
        for (size_t k = 0; k < kModeCount; k++) {
            if (ea[k] == Complex{}) {
                continue;
            }
            for (size_t l = 0; l < kModeCount; l++) {
                if (eb[l] != Complex{}) {
                    accumulate(creation, k, l, c * ea[k] * eb[l]);
                }
            }
        }
    }
    TwoPhotonState s(creation_to_fock(creation));
    if (s.total_probability() < kDegenerateProbability) {
        throw std::invalid_argument("TwoPhotonState: superposition cancels to the vacuum");
    }
    return s.normalized();
}

TwoPhotonState TwoPhotonState::from_terms(std::map<Pattern, Complex> terms) {
    std::map<Pattern, Complex> sorted;
    for (const auto &[key, value] : terms) {
        if (key.first >= kModeCount || key.second >= kModeCount) {
            throw std::invalid_argument("TwoPhotonState: mode index out of range");
        }
        sorted[{std::min(key.first, key.second), std::max(key.first, key.second)}] += value;
    }
    return TwoPhotonState(std::move(sorted));
}

double TwoPhotonState::total_probability() const {
    double p = 0;
    for (const auto &[key, value] : terms_) {
        p += std::norm(value);
    }
    return p;
}

Complex TwoPhotonState::amplitude(ModeKey a, ModeKey b) const {
    size_t i = a.index(), j = b.index();
    auto it = terms_.find({std::min(i, j), std::max(i, j)});
    return it == terms_.end() ? Complex{} : it->second;
}

bool TwoPhotonState::occupies_only(std::initializer_list<Spatial> allowed) const {
    auto ok = [&](size_t mode) {
        return std::find(allowed.begin(), allowed.end(), spatial_of(mode)) != allowed.end();
    };
    for (const auto &[key, value] : terms_) {
        if (std::abs(value) > kNegligible && (!ok(key.first) || !ok(key.second))) {
            return false;
        }
    }
    return true;
}

TwoPhotonState TwoPhotonState::transform(const ComplexMatrix &u) const {
    if (u.rows() != kModeCount || u.cols() != kModeCount) {
        throw std::invalid_argument("TwoPhotonState::transform: mode map has the wrong shape");
    }
    std::map<Pattern, Complex> creation;
    for (const auto &[key, c] : terms_) {
        auto [k, l] = key;
        Complex d = k == l ? c / std::sqrt(2.0) : c;
        for (size_t p = 0; p < kModeCount; p++) {
            Complex upk = u(p, k);
            if (upk == Complex{}) {
                continue;
            }
            for (size_t q = 0; q < kModeCount; q++) {
                Complex uql = u(q, l);
                if (uql != Complex{}) {
                    accumulate(creation, p, q, d * upk * uql);
                }
            }
        }
    }
    auto fock = creation_to_fock(creation);
    std::erase_if(fock, [](const auto &kv) { return std::norm(kv.second) < 1e-32; });
    return TwoPhotonState(std::move(fock));
}

TwoPhotonState TwoPhotonState::normalized() const {
    double n = std::sqrt(total_probability());
    if (!(n > 0)) {
        throw std::invalid_argument("TwoPhotonState: cannot normalize the zero state");
    }
    auto terms = terms_;
    for (auto &[key, value] : terms) {
        value /= n;
    }
    return TwoPhotonState(std::move(terms));
}

std::vector<Complex> TwoPhotonState::wavefunction() const {
    std::vector<Complex> psi(kModeCount * kModeCount);
    for (const auto &[key, c] : terms_) {
        auto [k, l] = key;
        if (k == l) {
            psi[k * kModeCount + k] = c;
        } else {
            psi[k * kModeCount + l] = c * kInvSqrt2;
            psi[l * kModeCount + k] = c * kInvSqrt2;
        }
    }
    return psi;
}

double delay_fs(double z_um) { return z_um / (2 * kSpeedOfLightUmPerFs); }

double visibility_model(double z_um, double tau_coh_fs) {
    if (!(tau_coh_fs > 0)) {
        throw std::invalid_argument("visibility_model: tau_coh must be positive");
    }
    double x = delay_fs(z_um) / tau_coh_fs;
    return std::exp(-x * x);
}

double stage_for_visibility(double v, double tau_coh_fs) {
    if (!(tau_coh_fs > 0)) {
        throw std::invalid_argument("stage_for_visibility: tau_coh must be positive");
    }
    if (!(v > 0 && v <= 1)) {
        throw std::invalid_argument("stage_for_visibility: visibility must lie in (0, 1]");
    }
    return 2 * kSpeedOfLightUmPerFs * tau_coh_fs * std::sqrt(-std::log(v));
}

std::vector<WeightedState> prepare_input(const PureState &phi, const Ancilla &ancilla, double v) {
    if (!(v >= 0 && v <= 1)) {
        throw std::invalid_argument("prepare_input: visibility must lie in [0, 1]");
    }
    PhotonMode s{Spatial::InS, qubit_pair(phi, "prepare_input"), {1.0, 0.0}};
    std::array<Complex, 2> temporal{std::sqrt(v), std::sqrt(1 - v)};

    std::vector<std::pair<double, std::array<Complex, 2>>> pols;
    if (std::holds_alternative<MixedHV>(ancilla)) {
        pols = {{0.5, {1.0, 0.0}}, {0.5, {0.0, 1.0}}};
    } else {
        pols = {{1.0, qubit_pair(std::get<PureState>(ancilla), "prepare_input")}};
    }
    std::vector<WeightedState> ensemble;
    for (const auto &[w, pol] : pols) {
        PhotonMode a{Spatial::InA, pol, temporal};
        ensemble.push_back({w, TwoPhotonState::product(s, a)});
    }
    return ensemble;
}

TwoPhotonState beamsplitter(const TwoPhotonState &state) {
    if (!state.occupies_only({Spatial::InS, Spatial::InA})) {
        throw std::invalid_argument("beamsplitter: photons outside the input ports in_S, in_A");
    }
    static const ComplexMatrix kMap = [] {
        std::vector<Complex> e(kModeCount * kModeCount);
        auto set = [&](ModeKey to, ModeKey from, Complex c) { e[to.index() * kModeCount + from.index()] = c; };
        for (size_t m = 0; m < kModeCount; m++) {
            ModeKey from = ModeKey::from_index(m);
            ModeKey out1 = from, out2 = from;
            out1.spatial = Spatial::Out1;
            out2.spatial = Spatial::Out2;
            if (from.spatial == Spatial::InS) {
                set(out1, from, kInvSqrt2);
                set(out2, from, kInvSqrt2);
            } else if (from.spatial == Spatial::InA) {
                set(out1, from, kInvSqrt2);
                set(out2, from, -kInvSqrt2);
            }
        }
        return ComplexMatrix(kModeCount, kModeCount, std::move(e));
    }();
    return state.transform(kMap);
}

Postselected postselect_double_out1(const TwoPhotonState &state) {
    if (!state.occupies_only({Spatial::Out1, Spatial::Out2})) {
        throw std::invalid_argument("postselect_double_out1: photons outside the output ports out_1, out_2");
    }
    std::map<TwoPhotonState::Pattern, Complex> kept;
    for (const auto &[key, value] : state.terms()) {
        if (spatial_of(key.first) == Spatial::Out1 && spatial_of(key.second) == Spatial::Out1) {
            kept[key] = value;
        }
    }
    auto selected = TwoPhotonState::from_terms(std::move(kept));
    double p = selected.total_probability();
    if (p < kDegenerateProbability) {
        throw DegeneratePostselection("postselect_double_out1: no amplitude for two photons in out_1");
    }
    return {selected.normalized(), std::min(p, 1.0)};
}

Mode1Analysis analyze_mode1(const TwoPhotonState &state, const PureState &phi) {
    if (!state.occupies_only({Spatial::Out1})) {
        throw std::invalid_argument("analyze_mode1: photons outside out_1");
    }
    auto [alpha, beta] = qubit_pair(phi, "analyze_mode1");
    // WP_C rows: <phi| and <phi_perp| with phi_perp = (-conj(beta), conj(alpha)).
    const Complex wp[2][2] = {{std::conj(alpha), std::conj(beta)}, {-beta, alpha}};

    std::vector<Complex> e(kModeCount * kModeCount);
    auto set = [&](ModeKey to, ModeKey from, Complex c) { e[to.index() * kModeCount + from.index()] += c; };
    for (size_t p = 0; p < 2; p++) {
        for (size_t t = 0; t < 2; t++) {
            ModeKey from{Spatial::Out1, static_cast<Polarization>(p), static_cast<Temporal>(t)};
            auto temporal = static_cast<Temporal>(t);
            Complex to_h = wp[0][p];
            Complex to_v = wp[1][p];
            set({Spatial::DetA1, Polarization::H, temporal}, from, to_h * kInvSqrt2);
            set({Spatial::DetA2, Polarization::H, temporal}, from, to_h * kInvSqrt2);
            set({Spatial::DetB, Polarization::V, temporal}, from, to_v);
        }
    }
    auto detected = state.transform(ComplexMatrix(kModeCount, kModeCount, std::move(e)));

    Mode1Analysis result{0, 0};
    for (const auto &[key, value] : detected.terms()) {
        auto a = spatial_of(key.first);
        auto b = spatial_of(key.second);
        auto is_pair = [&](Spatial x, Spatial y) { return (a == x && b == y) || (a == y && b == x); };
        if (is_pair(Spatial::DetA1, Spatial::DetA2)) {
            result.p_A1A2 += std::norm(value);
        } else if (is_pair(Spatial::DetA2, Spatial::DetB)) {
            result.p_A2B += std::norm(value);
        }
    }
    return result;
}

DensityMatrix polarization_density(const TwoPhotonState &state) {
    auto psi = state.wavefunction();
    // Single-photon mode index = (spatial, pol, temporal); "rest" = (spatial, temporal).
    constexpr size_t kRest = kSpatialCount * 2;
    auto mode = [](size_t pol, size_t rest) { return ((rest / 2) * 2 + pol) * 2 + rest % 2; };
    std::vector<Complex> rho(16);
    for (size_t p1 = 0; p1 < 2; p1++) {
        for (size_t p2 = 0; p2 < 2; p2++) {
            for (size_t q1 = 0; q1 < 2; q1++) {
                for (size_t q2 = 0; q2 < 2; q2++) {
                    Complex acc{};
                    for (size_t r1 = 0; r1 < kRest; r1++) {
                        for (size_t r2 = 0; r2 < kRest; r2++) {
                            acc += psi[mode(p1, r1) * kModeCount + mode(p2, r2)] *
                                   std::conj(psi[mode(q1, r1) * kModeCount + mode(q2, r2)]);
                        }
                    }
                    rho[(p1 * 2 + p2) * 4 + q1 * 2 + q2] = acc;
                }
            }
        }
    }
    ComplexMatrix m(4, 4, std::move(rho));
    double tr = qmath::trace(m).real();
    if (tr < kDegenerateProbability) {
        throw std::invalid_argument("polarization_density: zero state");
    }
    return {qmath::qubit_layout({"S", "A"}), Complex(1 / tr) * m};
}

ExactPoint exact_point(const PureState &phi, const Ancilla &ancilla, double v) {
    ExactPoint point{v, 0, 0, 0};
    for (const auto &member : prepare_input(phi, ancilla, v)) {
        auto split = beamsplitter(member.state);
        try {
            auto post = postselect_double_out1(split);
            auto a = analyze_mode1(post.state, phi);
            point.p_post += member.weight * post.probability;
            point.p_A1A2 += member.weight * post.probability * a.p_A1A2;
            point.p_A2B += member.weight * post.probability * a.p_A2B;
        } catch (const DegeneratePostselection &) {
        }
    }
    return point;
}

DensityMatrix postselected_polarization(const PureState &phi, const Ancilla &ancilla, double v) {
    ComplexMatrix acc(4, 4);
    double total = 0;
    for (const auto &member : prepare_input(phi, ancilla, v)) {
        auto split = beamsplitter(member.state);
        try {
            auto post = postselect_double_out1(split);
            double w = member.weight * post.probability;
            acc = acc + Complex(w) * polarization_density(post.state).matrix();
            total += w;
        } catch (const DegeneratePostselection &) {
        }
    }
    if (total < kDegenerateProbability) {
        throw DegeneratePostselection("postselected_polarization: no ensemble member reaches out_1 twice");
    }
    return {qmath::qubit_layout({"S", "A"}), Complex(1 / total) * acc};
}

std::vector<CoincidenceRecord> hom_scan(const PureState &phi, std::span<const double> z_values,
                                        const ScanOptions &options) {
    if (z_values.empty()) {
        throw std::invalid_argument("hom_scan: empty z list");
    }
    require_trials(options);
    std::vector<CoincidenceRecord> records;
    std::vector<std::vector<MemberOutcomes>> members;
    for (double z : z_values) {
        double v = visibility_model(z, options.tau_coh_fs);
        members.push_back(member_outcomes(phi, MixedHV{}, v));
        records.push_back(exact_record(z, v, members.back()));
    }
    if (options.mode == ScanMode::MonteCarlo) {
        auto tallies = sample_points(members, options, 0);
        for (size_t i = 0; i < records.size(); i++) {
            records[i].n_A1A2 = tallies[i].n_A1A2;
            records[i].n_A2B = tallies[i].n_A2B;
            records[i].trials = options.trials;
        }
    }
    return records;
}

CoincidenceRecord baseline_record(const PureState &phi, const ScanOptions &options, uint64_t point_index) {
    require_trials(options);
    std::vector<std::vector<MemberOutcomes>> members{member_outcomes(phi, MixedHV{}, 0.0)};
    auto record = exact_record(std::numeric_limits<double>::infinity(), 0.0, members[0]);
    if (options.mode == ScanMode::MonteCarlo) {
        auto tally = sample_points(members, options, point_index)[0];
        record.n_A1A2 = tally.n_A1A2;
        record.n_A2B = tally.n_A2B;
        record.trials = options.trials;
    }
    return record;
}

const CoincidenceRecord &peak_record(std::span<const CoincidenceRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("peak_record: no records");
    }
    return *std::max_element(records.begin(), records.end(),
                             [](const auto &a, const auto &b) { return a.visibility < b.visibility; });
}

double extract_R(const CoincidenceRecord &peak, const CoincidenceRecord &baseline, RatioSource source) {
    if (source == RatioSource::Probability) {
        if (!(baseline.p_A1A2 > 0)) {
            throw std::domain_error("extract_R: baseline [D_A1,D_A2] probability is zero");
        }
        return peak.p_A1A2 / baseline.p_A1A2;
    }
    if (baseline.n_A1A2 == 0 || baseline.trials == 0 || peak.trials == 0) {
        throw std::domain_error("extract_R: baseline [D_A1,D_A2] count is zero");
    }
    double peak_rate = static_cast<double>(peak.n_A1A2) / static_cast<double>(peak.trials);
    double base_rate = static_cast<double>(baseline.n_A1A2) / static_cast<double>(baseline.trials);
    return peak_rate / base_rate;
}

double fidelity_from_R(double r) {
    if (!(r >= 1)) {
        std::ostringstream ss;
        ss << "fidelity_from_R: R = " << r << " is below the classical value 1";
        throw std::domain_error(ss.str());
    }
    return (2 * r + 1) / (2 * r + 2);
}

double R_from_fidelity(double f) {
    if (!(f >= 0.75 && f < 1)) {
        throw std::domain_error("R_from_fidelity: fidelity must lie in [3/4, 1)");
    }
    return (2 * f - 1) / (2 - 2 * f);
}

double enhancement_ratio(const PureState &phi, double v) {
    return exact_point(phi, MixedHV{}, v).p_A1A2 / exact_point(phi, MixedHV{}, 0.0).p_A1A2;
}

double visibility_for_ratio(const PureState &phi, double r) {
    double lo = 0, hi = 1;
    double r_lo = enhancement_ratio(phi, lo);
    double r_hi = enhancement_ratio(phi, hi);
    if (!(r >= r_lo - kTolerance && r <= r_hi + kTolerance)) {
        std::ostringstream ss;
        ss << "visibility_for_ratio: R = " << r << " outside the attainable range [" << r_lo << ", " << r_hi << "]";
        throw std::domain_error(ss.str());
    }
    for (int k = 0; k < 200 && hi - lo > 1e-15; k++) {
        double mid = 0.5 * (lo + hi);
        if (enhancement_ratio(phi, mid) < r) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tpclone::photonics
