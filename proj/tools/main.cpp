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

#include <CLI11.hpp>
#include <string>

#include "commands.hpp"

namespace {

using lambdacav::cli::CommonConfig;
using lambdacav::cli::QubitInput;
using lambdacav::cli::RunConfig;
using lambdacav::cli::SweepSpec;

std::string validate_gt_spec(const std::string &value) {
    if (value == "heuristic" || value == "optimize") return {};
    char *end = nullptr;
    double parsed = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(parsed)) {
        return "must be 'heuristic', 'optimize', or a finite number";
    }
    return {};
}

void add_common_options(CLI::App *cmd, CommonConfig &c, bool with_gt) {
    cmd->fallthrough();
    cmd->add_option("--output", c.output, "Output path, '-' for stdout")
        ->capture_default_str();
    cmd->add_option("--format", c.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--alpha", c.alpha_re, "Coherent amplitude (real part)")
        ->capture_default_str();
    cmd->add_option("--alpha-im", c.alpha_im, "Coherent amplitude (imaginary part)")
        ->capture_default_str();
    cmd->add_option("--nmax", c.n_max, "Fock cutoff; 0 selects the default rule")
        ->check(CLI::Range(0, 1 << 20))
        ->capture_default_str();
    cmd->add_option("--tail-tolerance", c.tail_tolerance,
                    "Max probability allowed in the top 3 Fock levels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (with_gt) {
        cmd->add_option("--gt", c.gt_spec, "Probe pulse: 'heuristic', 'optimize', or radians")
            ->check(CLI::Validator(validate_gt_spec, "GT"))
            ->capture_default_str();
    }
}

void add_input_options(CLI::App *cmd, QubitInput &q, CLI::Option **theta_opt) {
    auto *zr = cmd->add_option("--zeta-re", q.zeta_re, "Input qubit |b> amplitude (real)")
                   ->capture_default_str();
    auto *zi = cmd->add_option("--zeta-im", q.zeta_im, "Input qubit |b> amplitude (imag)")
                   ->capture_default_str();
    auto *xr = cmd->add_option("--xi-re", q.xi_re, "Input qubit |c> amplitude (real)")
                   ->capture_default_str();
    auto *xi = cmd->add_option("--xi-im", q.xi_im, "Input qubit |c> amplitude (imag)")
                   ->capture_default_str();
    auto *th = cmd->add_option("--theta", q.theta,
                               "Bloch polar angle; sets zeta=cos(theta/2), xi=e^{i phi} "
                               "sin(theta/2)");
    auto *ph = cmd->add_option("--phi", q.phi, "Bloch azimuth (used with --theta)");
    for (auto *amp_opt : {zr, zi, xr, xi}) {
        th->excludes(amp_opt);
        ph->excludes(amp_opt);
    }
    *theta_opt = th;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cavity-QED entanglement and teleportation experiments"};
    app.require_subcommand(1);
    // Config parsing happens at the top level, so keys live in a section named
    // after the subcommand ("[epr]", "[sweep]", ...). Flags always win.
    app.set_config("--config", "",
                   "Key=value file with one [subcommand] section per command; flags override");

    RunConfig epr_cfg;
    CLI::App *epr = app.add_subcommand("epr", "Prepare an atomic Bell pair through a cavity");
    add_common_options(epr, epr_cfg.common, true);
    epr->add_option("--variant", epr_cfg.variant, "Bell state to prepare, or 'all'")
        ->check(CLI::IsMember({"psi-plus", "psi-minus", "phi-minus", "phi-plus", "all"}))
        ->capture_default_str();

    RunConfig tp_cfg;
    CLI::Option *tp_theta = nullptr;
    CLI::App *tp = app.add_subcommand("teleport", "Teleport an atomic qubit through the pair");
    add_common_options(tp, tp_cfg.common, true);
    add_input_options(tp, tp_cfg.input, &tp_theta);
    tp->add_flag("--sample", tp_cfg.sample, "Sample one detection trajectory");
    tp->add_option("--seed", tp_cfg.seed, "Trajectory sampling seed")->capture_default_str();

    SweepSpec sweep_cfg;
    CLI::App *sweep = app.add_subcommand("sweep", "Scan alpha or the probe pulse length");
    add_common_options(sweep, sweep_cfg.common, true);
    sweep->add_option("--variable", sweep_cfg.variable, "Grid variable")
        ->check(CLI::IsMember({"alpha", "gt"}))
        ->required();
    sweep->add_option("--start", sweep_cfg.start, "Grid start (inclusive)")->required();
    sweep->add_option("--stop", sweep_cfg.stop, "Grid stop (inclusive)")->required();
    sweep->add_option("--steps", sweep_cfg.steps, "Number of grid points")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    sweep->add_option("--jobs", sweep_cfg.jobs, "Parallel workers")
        ->check(CLI::Range(1, 4096))
        ->capture_default_str();
    sweep->add_option("--variant", sweep_cfg.variant, "Bell state to prepare")
        ->check(CLI::IsMember({"psi-plus", "psi-minus", "phi-minus", "phi-plus"}))
        ->capture_default_str();

    RunConfig bell_cfg;
    CLI::App *bell =
        app.add_subcommand("bell-check", "Verify Bell-basis orthonormality and rotations");
    bell->fallthrough();
    bell->add_option("--output", bell_cfg.common.output, "Output path, '-' for stdout")
        ->capture_default_str();
    bell->add_option("--format", bell_cfg.common.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    RunConfig cm_cfg;
    CLI::Option *cm_theta = nullptr;
    CLI::App *cm = app.add_subcommand("compare-models",
                                      "Cross-check the physical run against the qubit model");
    add_common_options(cm, cm_cfg.common, false);
    add_input_options(cm, cm_cfg.input, &cm_theta);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? lambdacav::cli::kExitOk : lambdacav::cli::kExitUsage;
    }
    tp_cfg.input.use_bloch = tp_theta->count() > 0;
    cm_cfg.input.use_bloch = cm_theta->count() > 0;

    using lambdacav::cli::run_protected;
    if (epr->parsed()) return run_protected([&] { return cmd_epr(epr_cfg); });
    if (tp->parsed()) return run_protected([&] { return cmd_teleport(tp_cfg); });
    if (sweep->parsed()) return run_protected([&] { return cmd_sweep(sweep_cfg); });
    if (bell->parsed()) return run_protected([&] { return cmd_bell_check(bell_cfg); });
    if (cm->parsed()) return run_protected([&] { return cmd_compare_models(cm_cfg); });
    return lambdacav::cli::kExitUsage;
}
