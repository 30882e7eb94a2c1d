// Copyright 2026 The lambdacav Authors
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

#ifndef LAMBDACAV_TOOLS_COMMANDS_HPP
#define LAMBDACAV_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace lambdacav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheck = 1;
inline constexpr int kExitTruncation = 2;
inline constexpr int kExitProtocol = 3;
inline constexpr int kExitUsage = 64;

/// Configuration problem detected after flag parsing (exit 64).
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Options shared by every subcommand.
struct CommonConfig {
    double alpha_re = 2.0;
    double alpha_im = 0.0;
    int n_max = 0;  // 0 resolves to the default cutoff rule
    double tail_tolerance = 1e-9;
    std::string gt_spec = "heuristic";  // "heuristic", "optimize", or radians
    std::string output = "-";
    std::string format = "csv";
};

/// Input-qubit parametrization: explicit amplitudes or Bloch angles
/// zeta = cos(theta/2), xi = e^{i phi} sin(theta/2).
struct QubitInput {
    double zeta_re = 0.8;
    double zeta_im = 0.0;
    double xi_re = 0.6;
    double xi_im = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    bool use_bloch = false;
};

/// Resolved per-run configuration for epr, teleport, bell-check, and
/// compare-models.
struct RunConfig {
    CommonConfig common;
    QubitInput input;
    std::string variant = "psi-plus";  // epr: one variant name or "all"
    bool sample = false;
    std::uint64_t seed = 0;
};

/// Grid specification for the sweep subcommand.
struct SweepSpec {
    CommonConfig common;
    std::string variable = "alpha";  // "alpha" or "gt"
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;
    int jobs = 1;
    std::string variant = "psi-plus";
};

int cmd_epr(const RunConfig &config);
int cmd_teleport(const RunConfig &config);
int cmd_sweep(const SweepSpec &spec);
int cmd_bell_check(const RunConfig &config);
int cmd_compare_models(const RunConfig &config);

/// Runs `body`, translating library errors into the documented exit codes
/// (message on standard error).
int run_protected(const std::function<int()> &body);

}  // namespace lambdacav::cli

#endif
