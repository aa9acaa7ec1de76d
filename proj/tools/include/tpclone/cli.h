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

#ifndef TPCLONE_CLI_H
#define TPCLONE_CLI_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tpclone/photonics.h"
#include "tpclone/qcore.h"

namespace tpclone::cli {

/// Malformed invocation. The message names the flag at fault.
class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// "H", "V", "+", "-", "R", "L" or "theta=<deg>,phi=<deg>"; the result lives on label "S".
PureState parse_state(std::string_view text);

enum class Command { Teleport, Clone, HomScan, Selftest };
std::string_view to_string(Command c);

enum class Variant { PsiMinus, PhiPlus };

struct RunConfig {
    Command command = Command::Selftest;
    std::string state = "H";
    Variant variant = Variant::PsiMinus;
    photonics::ScanMode mode = photonics::ScanMode::Exact;
    uint64_t trials = 100000;
    uint64_t seed = 0;
    double z_min = -120;
    double z_max = 120;
    uint64_t steps = 49;
    double tau_coh = 80;
    double tolerance = kTolerance;  ///< selftest comparison tolerance
    std::string out;                ///< empty means stdout
    unsigned threads = 0;           ///< 0 picks the hardware concurrency
};

/// Parses argv (including argv[0]). Throws UsageError; returns false if only help was requested.
bool parse_args(int argc, const char *const *argv, RunConfig &config, std::ostream &help);

/// Fixed notation, at least 10 significant digits, and exact round trip through strtod.
std::string format_number(double x);

/// Canonical invocation reproducing `config`; omits --out and --threads, which do not affect results.
std::string canonical_invocation(const RunConfig &config);

/// Evenly spaced scan positions including both endpoints.
std::vector<double> scan_grid(const RunConfig &config);

struct Report {
    std::string csv;
    std::string summary;
};

Report cmd_teleport(const RunConfig &config);
Report cmd_clone(const RunConfig &config);
/// Throws std::domain_error when the baseline coincidence rate is zero.
Report cmd_hom_scan(const RunConfig &config);

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

std::vector<Check> selftest(double tolerance);

/// Full command-line entry point. Exit status: 0 success, 1 failed run or check, 2 usage error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace tpclone::cli

#endif  // TPCLONE_CLI_H
