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

#include "tpclone/cli.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tpclone/protocols.h"

#ifndef TPCLONE_VERSION
#define TPCLONE_VERSION "unknown"
#endif

namespace tpclone::cli {

namespace {

using namespace std::complex_literals;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

// Plain key=value lines; '#' starts a comment line. Values are taken verbatim,
// so commas inside a state spec survive.
class KeyValueConfig : public CLI::Config {
   public:
    std::string to_config(const CLI::App *, bool, bool, std::string) const override { return {}; }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        std::vector<CLI::ConfigItem> items;
        std::string line;
        int number = 0;
        while (std::getline(input, line)) {
            number++;
            auto text = trim(line);
            if (text.empty() || text.front() == '#') {
                continue;
            }
            auto eq = text.find('=');
            if (eq == std::string_view::npos) {
                throw CLI::ConfigError("line " + std::to_string(number) + " is not key=value: " +
                                       std::string(text));
            }
            CLI::ConfigItem item;
            item.name = std::string(trim(text.substr(0, eq)));
            item.inputs = {std::string(trim(text.substr(eq + 1)))};
            items.push_back(std::move(item));
        }
        return items;
    }
};

double parse_angle(std::string_view token, std::string_view key, std::string_view whole) {
    auto fail = [&] {
        return UsageError("--state: bad token '" + std::string(token) + "' in '" + std::string(whole) +
                          "' (expected " + std::string(key) + "=<degrees>)");
    };
    if (!token.starts_with(key) || token.size() <= key.size() || token[key.size()] != '=') {
        throw fail();
    }
    auto number = token.substr(key.size() + 1);
    double value = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(value)) {
        throw fail();
    }
    return value;
}

std::string shortest(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, ptr};
}

std::string quote_if_needed(const std::string &s) {
    bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '=' || c == ',' ||
               c == '.' || c == '_';
    });
    return plain ? s : "'" + s + "'";
}

std::string_view to_string(Variant v) { return v == Variant::PsiMinus ? "psi_minus" : "phi_plus"; }

std::string_view to_string(photonics::ScanMode m) {
    return m == photonics::ScanMode::Exact ? "exact" : "monte-carlo";
}

void provenance(std::ostream &os, const RunConfig &config, bool sampled) {
    os << "# tpclone " << TPCLONE_VERSION << "\n";
    os << "# invocation: " << canonical_invocation(config) << "\n";
    if (sampled) {
        os << "# seed: " << config.seed << "\n";
        os << "# generator: " << photonics::kGeneratorName << "\n";
    } else {
        os << "# seed: none (exact computation)\n";
        os << "# generator: none (exact computation)\n";
    }
}

photonics::ScanOptions scan_options(const RunConfig &config) {
    photonics::ScanOptions options;
    options.mode = config.mode;
    options.tau_coh_fs = config.tau_coh;
    options.trials = config.mode == photonics::ScanMode::MonteCarlo ? config.trials : 0;
    options.seed = config.seed;
    options.threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    return options;
}

void validate(const RunConfig &config) {
    parse_state(config.state);
    if (!std::isfinite(config.z_min)) {
        throw UsageError("--z-min: must be finite");
    }
    if (!std::isfinite(config.z_max)) {
        throw UsageError("--z-max: must be finite");
    }
    if (!(config.z_min < config.z_max)) {
        throw UsageError("--z-min: must be below --z-max (got " + shortest(config.z_min) + " >= " +
                         shortest(config.z_max) + ")");
    }
    if (config.steps < 2) {
        throw UsageError("--steps: a scan needs at least 2 steps");
    }
    if (!(config.tau_coh > 0) || !std::isfinite(config.tau_coh)) {
        throw UsageError("--tau-coh: must be a positive number of femtoseconds");
    }
    if (config.mode == photonics::ScanMode::MonteCarlo && config.trials == 0) {
        throw UsageError("--trials: monte-carlo mode needs at least 1 trial");
    }
    if (!(config.tolerance >= 0) || !std::isfinite(config.tolerance)) {
        throw UsageError("--tolerance: must be a finite non-negative number");
    }
}

}  // namespace

PureState parse_state(std::string_view text) {
    const double h = 1 / std::sqrt(2.0);
    static const std::map<std::string_view, std::pair<Complex, Complex>> kNamed{
        {"H", {1, 0}}, {"V", {0, 1}}, {"+", {h, h}}, {"-", {h, -h}}, {"R", {h, h * 1i}}, {"L", {h, -h * 1i}},
    };
    if (auto it = kNamed.find(text); it != kNamed.end()) {
        return PureState::qubit("S", it->second.first, it->second.second);
    }
    if (!text.starts_with("theta")) {
        throw UsageError("--state: unknown state '" + std::string(text) +
                         "' (expected H, V, +, -, R, L or theta=<deg>,phi=<deg>)");
    }
    auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw UsageError("--state: missing ',phi=<deg>' after '" + std::string(text) + "'");
    }
    double theta = parse_angle(text.substr(0, comma), "theta", text);
    double phi = parse_angle(text.substr(comma + 1), "phi", text);
    const double rad = std::numbers::pi / 180;
    return PureState::qubit("S", std::cos(theta * rad / 2), std::polar(std::sin(theta * rad / 2), phi * rad));
}

std::string_view to_string(Command c) {
    switch (c) {
        case Command::Teleport:
            return "teleport";
        case Command::Clone:
            return "clone";
        case Command::HomScan:
            return "hom-scan";
        case Command::Selftest:
            return "selftest";
    }
    return "?";
}

bool parse_args(int argc, const char *const *argv, RunConfig &config, std::ostream &help) {
    CLI::App app{"Teleportation-based cloning and U-NOT simulator", "tpclone"};
    app.config_formatter(std::make_shared<KeyValueConfig>());
    app.set_config("--config", "", "plain key=value file; command-line flags override it");
    app.allow_config_extras(false);
    app.require_subcommand(1);

    app.add_option("--state", config.state, "H, V, +, -, R, L or theta=<deg>,phi=<deg>");
    std::string variant = std::string(to_string(config.variant));
    std::string mode = std::string(to_string(config.mode));
    app.add_option("--variant", variant, "psi_minus or phi_plus")->check(CLI::IsMember({"psi_minus", "phi_plus"}));
    app.add_option("--mode", mode, "exact or monte-carlo")
        ->check(CLI::IsMember({"exact", "monte-carlo", "monte_carlo"}));
    app.add_option("--trials", config.trials, "Monte Carlo trials per z point");
    app.add_option("--seed", config.seed, "64-bit Monte Carlo seed");
    app.add_option("--z-min", config.z_min, "first stage position in micrometers");
    app.add_option("--z-max", config.z_max, "last stage position in micrometers");
    app.add_option("--steps", config.steps, "number of stage positions");
    app.add_option("--tau-coh", config.tau_coh, "coherence time in femtoseconds");
    app.add_option("--tolerance", config.tolerance, "selftest comparison tolerance");
    app.add_option("--out", config.out, "CSV destination (default stdout)");
    app.add_option("--threads", config.threads, "Monte Carlo worker threads (0 = all cores)");

    const std::pair<const char *, Command> commands[] = {
        {"teleport", Command::Teleport},
        {"clone", Command::Clone},
        {"hom-scan", Command::HomScan},
        {"selftest", Command::Selftest},
    };
    const char *descriptions[] = {
        "standard teleportation, one row per Bell outcome",
        "dichotomic-measurement cloning and U-NOT fidelities",
        "two-photon interference scan of the coincidence rates",
        "run the invariant suite",
    };
    std::vector<std::pair<CLI::App *, Command>> subs;
    for (size_t k = 0; k < std::size(commands); k++) {
        auto *sub = app.add_subcommand(commands[k].first, descriptions[k]);
        sub->fallthrough();
        subs.emplace_back(sub, commands[k].second);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        help << app.help();
        return false;
    } catch (const CLI::CallForAllHelp &) {
        help << app.help("", CLI::AppFormatMode::All);
        return false;
    } catch (const CLI::ConfigError &e) {
        throw UsageError(std::string("--config: ") + e.what());
    } catch (const CLI::FileError &e) {
        throw UsageError(std::string("--config: ") + e.what());
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }
    config.variant = variant == "psi_minus" ? Variant::PsiMinus : Variant::PhiPlus;
    config.mode = mode == "exact" ? photonics::ScanMode::Exact : photonics::ScanMode::MonteCarlo;
    for (const auto &[sub, command] : subs) {
        if (sub->parsed()) {
            config.command = command;
        }
    }
    validate(config);
    return true;
}

std::string format_number(double x) {
    if (x == 0) {
        return std::signbit(x) ? "-0.000000000" : "0.000000000";
    }
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed);
    if (ec != std::errc()) {
        throw std::invalid_argument("format_number: value does not fit");
    }
    std::string s(buf, ptr);
    if (!std::isfinite(x)) {
        return s;
    }
    // The shortest round-trip form; pad with zeros up to 10 significant digits.
    size_t first = s.find_first_not_of("-0.");
    size_t significant = 0;
    for (size_t k = first; k < s.size(); k++) {
        significant += s[k] != '.';
    }
    if (significant < 10) {
        if (s.find('.') == std::string::npos) {
            s += '.';
        }
        s.append(10 - significant, '0');
    }
    return s;
}

std::string canonical_invocation(const RunConfig &c) {
    std::ostringstream os;
    os << "tpclone " << to_string(c.command);
    switch (c.command) {
        case Command::Teleport:
            os << " --state=" << quote_if_needed(c.state);
            break;
        case Command::Clone:
            os << " --state=" << quote_if_needed(c.state) << " --variant=" << to_string(c.variant);
            break;
        case Command::HomScan:
            os << " --state=" << quote_if_needed(c.state) << " --mode=" << to_string(c.mode);
            if (c.mode == photonics::ScanMode::MonteCarlo) {
                os << " --trials=" << c.trials << " --seed=" << c.seed;
            }
            os << " --z-min=" << shortest(c.z_min) << " --z-max=" << shortest(c.z_max) << " --steps=" << c.steps
               << " --tau-coh=" << shortest(c.tau_coh);
            break;
        case Command::Selftest:
            os << " --tolerance=" << shortest(c.tolerance);
            break;
    }
    return os.str();
}

std::vector<double> scan_grid(const RunConfig &config) {
    std::vector<double> z(config.steps);
    const double span = config.z_max - config.z_min;
    const double last = static_cast<double>(config.steps - 1);
    for (uint64_t k = 0; k < config.steps; k++) {
        z[k] = k + 1 == config.steps ? config.z_max : config.z_min + span * (static_cast<double>(k) / last);
    }
    return z;
}

Report cmd_teleport(const RunConfig &config) {
    auto phi = parse_state(config.state);
    auto outcomes = protocols::standard_teleport(phi);
    std::ostringstream csv, summary;
    provenance(csv, config, false);
    csv << "bell_outcome,probability,corrected_fidelity,uncorrected_fidelity\n";
    std::vector<DensityMatrix> uncorrected;
    std::vector<double> weights;
    double total = 0;
    double worst = 1;
    for (const auto &o : outcomes) {
        double corrected = fidelity(o.bob_state, phi);
        csv << to_string(o.bell_result) << ',' << format_number(o.probability) << ',' << format_number(corrected)
            << ',' << format_number(fidelity(o.bob_uncorrected, phi)) << '\n';
        uncorrected.push_back(o.bob_uncorrected);
        weights.push_back(o.probability);
        total += o.probability;
        worst = std::min(worst, corrected);
    }
    double blind = fidelity(mix(uncorrected, weights), phi);
    summary << "teleport --state=" << config.state << "\n"
            << "  branch probabilities sum to " << format_number(total) << "\n"
            << "  worst corrected fidelity = " << format_number(worst) << "\n"
            << "  fidelity of the uncorrected mixture = " << format_number(blind) << "\n";
    return {csv.str(), summary.str()};
}

Report cmd_clone(const RunConfig &config) {
    auto phi = parse_state(config.state);
    auto perp = orthogonal_qubit(phi);
    bool transposed = config.variant == Variant::PhiPlus;
    auto result = transposed ? protocols::transpose_variant(phi) : protocols::modified_protocol(phi);
    auto clone_target = transposed ? apply_unitary(pauli(Pauli::Y), phi) : phi;
    auto unot_target = transposed ? apply_unitary(pauli(Pauli::Y), perp) : perp;
    const std::pair<const char *, double> rows[] = {
        {"p_singlet", result.p_singlet},
        {"p_complement", result.p_complement},
        {"F_clone_S", fidelity(result.rho_S, clone_target)},
        {"F_clone_A", fidelity(result.rho_A, clone_target)},
        {"F_unot_B", fidelity(result.rho_B, unot_target)},
    };
    std::ostringstream csv, summary;
    provenance(csv, config, false);
    csv << "quantity,value\n";
    summary << "clone --state=" << config.state << " --variant=" << to_string(config.variant) << "\n";
    if (transposed) {
        summary << "  targets: sigma_Y|phi> for S and A, sigma_Y|phi_perp> for B\n";
    }
    for (const auto &[name, value] : rows) {
        csv << name << ',' << format_number(value) << '\n';
        summary << "  " << name << " = " << format_number(value) << "\n";
    }
    return {csv.str(), summary.str()};
}

Report cmd_hom_scan(const RunConfig &config) {
    auto phi = parse_state(config.state);
    auto options = scan_options(config);
    auto z = scan_grid(config);
    auto records = photonics::hom_scan(phi, z, options);
    auto baseline = photonics::baseline_record(phi, options, z.size());
    const auto &peak = photonics::peak_record(records);
    bool sampled = config.mode == photonics::ScanMode::MonteCarlo;

    std::ostringstream csv, summary;
    provenance(csv, config, sampled);
    csv << "# baseline (v = 0, |z| -> inf): p_A1A2=" << format_number(baseline.p_A1A2)
        << " p_A2B=" << format_number(baseline.p_A2B) << " n_A1A2=" << baseline.n_A1A2
        << " n_A2B=" << baseline.n_A2B << " trials=" << baseline.trials << "\n";
    csv << "z_um,visibility,p_A1A2,p_A2B,n_A1A2,n_A2B,trials\n";
    for (const auto &r : records) {
        csv << format_number(r.z_um) << ',' << format_number(r.visibility) << ',' << format_number(r.p_A1A2) << ','
            << format_number(r.p_A2B) << ',' << r.n_A1A2 << ',' << r.n_A2B << ',' << r.trials << '\n';
    }

    auto source = sampled ? photonics::RatioSource::Counts : photonics::RatioSource::Probability;
    double r = photonics::extract_R(peak, baseline, source);
    double flat = peak.p_A2B / baseline.p_A2B;
    summary << "hom-scan --state=" << config.state << " (" << to_string(config.mode) << ", " << z.size()
            << " points)\n"
            << "  peak at z = " << format_number(peak.z_um) << " um, visibility " << format_number(peak.visibility)
            << "\n"
            << "  R = " << format_number(r) << (sampled ? " (from counts)" : "") << "\n";
    if (r >= 1) {
        summary << "  F = (2R+1)/(2R+2) = " << format_number(photonics::fidelity_from_R(r)) << "\n";
    } else {
        summary << "  F undefined: R is below 1\n";
    }
    if (sampled) {
        double r_exact = photonics::extract_R(peak, baseline);
        summary << "  exact R = " << format_number(r_exact)
                << ", F = " << format_number(photonics::fidelity_from_R(r_exact)) << "\n";
    }
    summary << "  [D_A2,D_B] peak/baseline = " << format_number(flat) << "\n";
    return {csv.str(), summary.str()};
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig config;
    try {
        if (!parse_args(argc, argv, config, out)) {
            return 0;
        }
    } catch (const UsageError &e) {
        err << "tpclone: error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (config.command == Command::Selftest) {
            auto checks = selftest(config.tolerance);
            size_t passed = 0;
            for (const auto &c : checks) {
                passed += c.passed;
                out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
            }
            out << passed << "/" << checks.size() << " checks passed\n";
            return passed == checks.size() ? 0 : 1;
        }

        Report report;
        switch (config.command) {
            case Command::Teleport:
                report = cmd_teleport(config);
                break;
            case Command::Clone:
                report = cmd_clone(config);
                break;
            default:
                report = cmd_hom_scan(config);
                break;
        }
        if (config.out.empty()) {
            out << report.csv;
            err << report.summary;
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) {
                err << "tpclone: error: --out: cannot open '" << config.out << "' for writing\n";
                return 2;
            }
            file << report.csv;
            if (!file.flush()) {
                err << "tpclone: error: --out: write to '" << config.out << "' failed\n";
                return 1;
            }
            out << report.summary;
        }
        return 0;
    } catch (const std::exception &e) {
        err << "tpclone: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tpclone::cli
