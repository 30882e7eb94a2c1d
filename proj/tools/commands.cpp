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

#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "lambdacav/protocols.hpp"
#include "lambdacav/qubitmodel.hpp"
#include "report.hpp"

namespace lambdacav::cli {

namespace {

Amp resolve_alpha(const CommonConfig &c) { return Amp(c.alpha_re, c.alpha_im); }

int resolve_n_max(const CommonConfig &c, Amp alpha) {
    return c.n_max > 0 ? c.n_max : default_n_max(alpha);
}

struct ResolvedPulse {
    double gt = 0.0;
    std::string mode;  // "heuristic", "optimize", or "value"
};

ResolvedPulse resolve_gt(const std::string &spec, Amp alpha, int n_max, double tail_tolerance) {
    if (spec == "heuristic") return {probe_pulse_heuristic(alpha), "heuristic"};
    if (spec == "optimize") {
        return {probe_pulse_optimize(alpha, n_max, tail_tolerance).gt, "optimize"};
    }
    char *end = nullptr;
    double value = std::strtod(spec.c_str(), &end);
    if (end == spec.c_str() || *end != '\0' || !std::isfinite(value)) {
        throw UsageError("--gt must be 'heuristic', 'optimize', or a finite number, got '" +
                         spec + "'");
    }
    return {value, "value"};
}

struct ResolvedInput {
    Amp zeta;
    Amp xi;
};

ResolvedInput resolve_input(const QubitInput &q) {
    Amp zeta, xi;
    if (q.use_bloch) {
        zeta = Amp(std::cos(q.theta / 2.0), 0.0);
        xi = std::polar(std::sin(q.theta / 2.0), q.phi);
    } else {
        zeta = Amp(q.zeta_re, q.zeta_im);
        xi = Amp(q.xi_re, q.xi_im);
    }
    double n = std::norm(zeta) + std::norm(xi);
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "input qubit must satisfy |zeta|^2 + |xi|^2 = 1 within 1e-12 (got " << fmt17(n)
            << ")";
        throw UsageError(msg.str());
    }
    return {zeta, xi};
}

// Reports are assembled in memory and written in one piece so that failed
// runs emit nothing but their stderr message.
void write_output(const std::string &path, const std::string &payload) {
    if (path == "-") {
        std::cout << payload << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open output file '" + path + "'");
    out << payload;
}

Format parse_format(const std::string &name) {
    return name == "json" ? Format::Json : Format::Csv;
}

void echo_common(Report &rep, const std::string &command, const CommonConfig &c, Amp alpha,
                 int n_max) {
    rep.config("command", command);
    rep.config_num("alpha_re", alpha.real());
    rep.config_num("alpha_im", alpha.imag());
    rep.config_int("n_max", n_max);
    rep.config_num("tail_tolerance", c.tail_tolerance);
    rep.config("format", c.format);
}

void echo_input(Report &rep, const ResolvedInput &in) {
    rep.config_num("zeta_re", in.zeta.real());
    rep.config_num("zeta_im", in.zeta.imag());
    rep.config_num("xi_re", in.xi.real());
    rep.config_num("xi_im", in.xi.imag());
}

BellVariant variant_from_name(const std::string &name) {
    if (name == "psi-plus") return BellVariant::PsiPlus;
    if (name == "psi-minus") return BellVariant::PsiMinus;
    if (name == "phi-minus") return BellVariant::PhiMinus;
    if (name == "phi-plus") return BellVariant::PhiPlus;
    throw UsageError("unknown Bell variant '" + name + "'");
}

}  // namespace

int cmd_epr(const RunConfig &config) {
    Amp alpha = resolve_alpha(config.common);
    int n_max = resolve_n_max(config.common, alpha);
    ResolvedPulse pulse =
        resolve_gt(config.common.gt_spec, alpha, n_max, config.common.tail_tolerance);

    std::vector<BellVariant> variants;
    if (config.variant == "all") {
        variants = {BellVariant::PsiPlus, BellVariant::PsiMinus, BellVariant::PhiMinus,
                    BellVariant::PhiPlus};
    } else {
        variants = {variant_from_name(config.variant)};
    }

    std::ostringstream buffer;
    Report rep(buffer, parse_format(config.common.format));
    echo_common(rep, "epr", config.common, alpha, n_max);
    rep.config("variant", config.variant);
    rep.config("gt_mode", pulse.mode);
    rep.config_num("gt", pulse.gt);
    rep.begin({"variant", "alpha_re", "alpha_im", "gt", "n_max", "success_probability",
               "fidelity_to_ideal", "tail_mass"});

    for (BellVariant v : variants) {
        EprResult r =
            prepare_epr(alpha, pulse.gt, v, n_max, config.common.tail_tolerance);
        rep.row({Cell::str(to_string(v)), Cell::num(alpha.real()), Cell::num(alpha.imag()),
                 Cell::num(pulse.gt), Cell::integer(n_max),
                 Cell::num(r.success_probability), Cell::num(r.fidelity_to_ideal),
                 Cell::num(r.diagnostics.max_tail_mass)});
    }
    write_output(config.common.output, buffer.str());
    return kExitOk;
}

int cmd_teleport(const RunConfig &config) {
    ResolvedInput in = resolve_input(config.input);
    Amp alpha = resolve_alpha(config.common);
    int n_max = resolve_n_max(config.common, alpha);
    ResolvedPulse pulse =
        resolve_gt(config.common.gt_spec, alpha, n_max, config.common.tail_tolerance);

    TeleportConfig tc;
    tc.zeta = in.zeta;
    tc.xi = in.xi;
    tc.alpha = alpha;
    tc.probe_gt = pulse.gt;
    tc.n_max = n_max;
    tc.mode = config.sample ? TeleportMode::Sample : TeleportMode::Enumerate;
    tc.seed = config.seed;
    tc.tail_tolerance = config.common.tail_tolerance;
    TeleportResult result = teleport(tc);

    std::ostringstream buffer;
    Report rep(buffer, parse_format(config.common.format));
    echo_common(rep, "teleport", config.common, alpha, n_max);
    echo_input(rep, in);
    rep.config("gt_mode", pulse.mode);
    rep.config_num("gt", pulse.gt);
    rep.config("mode", config.sample ? "sample" : "enumerate");
    rep.config("seed", std::to_string(config.seed));
    rep.begin({"record", "outcome", "e3_probability", "epr_success_probability", "probability",
               "fidelity_before_correction", "fidelity_after_correction"});

    rep.row({Cell::str("e3"), Cell::none(), Cell::num(result.e3_probability),
             Cell::num(result.epr_success_probability), Cell::none(), Cell::none(),
             Cell::none()});
    for (const TeleportOutcome &rec : result.outcomes) {
        rep.row({Cell::str("outcome"), Cell::str(outcome_label(rec.a1_level, rec.a2_level)),
                 Cell::none(), Cell::none(), Cell::num(rec.probability),
                 Cell::num(rec.fidelity_before_correction), Cell::num(rec.fidelity_to_input)});
    }
    if (result.sampled_path.has_value()) {
        const SampledPath &path = *result.sampled_path;
        rep.row({Cell::str("trajectory"),
                 Cell::str(path.e3_detected ? outcome_label(path.a1_level, path.a2_level)
                                            : "f3"),
                 Cell::none(), Cell::none(), Cell::num(path.probability), Cell::none(),
                 Cell::none()});
    }
    write_output(config.common.output, buffer.str());
    return kExitOk;
}

int cmd_sweep(const SweepSpec &spec) {
    if (!(spec.start < spec.stop)) throw UsageError("sweep requires start < stop");
    if (spec.steps < 2) throw UsageError("sweep requires steps >= 2");
    if (spec.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (spec.variable != "alpha" && spec.variable != "gt") {
        throw UsageError("--variable must be 'alpha' or 'gt'");
    }
    BellVariant variant = variant_from_name(spec.variant);

    struct Row {
        double value = 0.0;
        double gt = 0.0;
        int n_max = 0;
        double success = 0.0;
        double fidelity = 0.0;
        bool ok = false;
        std::string status;
        std::string detail;
    };
    std::vector<Row> rows(static_cast<std::size_t>(spec.steps));

    auto evaluate = [&](std::size_t i) {
        Row &row = rows[i];
        row.value = spec.start + (spec.stop - spec.start) * static_cast<double>(i) /
                                     static_cast<double>(spec.steps - 1);
        try {
            Amp alpha = spec.variable == "alpha" ? Amp(row.value, 0.0)
                                                 : resolve_alpha(spec.common);
            row.n_max = resolve_n_max(spec.common, alpha);
            if (spec.variable == "gt") {
                row.gt = row.value;
            } else {
                row.gt = resolve_gt(spec.common.gt_spec, alpha, row.n_max,
                                    spec.common.tail_tolerance)
                             .gt;
            }
            EprResult r =
                prepare_epr(alpha, row.gt, variant, row.n_max, spec.common.tail_tolerance);
            row.success = r.success_probability;
            row.fidelity = r.fidelity_to_ideal;
            row.ok = true;
            row.status = "ok";
        } catch (const TruncationError &e) {
            row.status = "truncation";
            row.detail = e.what();
        } catch (const PostSelectionError &e) {
            row.status = "postselection";
            row.detail = e.what();
        } catch (const DomainError &e) {
            row.status = "domain";
            row.detail = e.what();
        } catch (const SimError &e) {
            row.status = "error";
            row.detail = e.what();
        }
    };

    // Grid points are independent; rows are emitted in grid order below
    // regardless of which worker finished first.
    int workers = std::min<int>(spec.jobs, spec.steps);
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= rows.size()) return;
                    evaluate(i);
                }
            });
        }
        for (std::thread &t : pool) t.join();
    }

    std::ostringstream buffer;
    Report rep(buffer, parse_format(spec.common.format));
    Amp fixed_alpha = resolve_alpha(spec.common);
    rep.config("command", "sweep");
    rep.config("variable", spec.variable);
    rep.config_num("start", spec.start);
    rep.config_num("stop", spec.stop);
    rep.config_int("steps", spec.steps);
    rep.config("variant", spec.variant);
    rep.config_num("alpha_re", fixed_alpha.real());
    rep.config_num("alpha_im", fixed_alpha.imag());
    rep.config("gt_spec", spec.common.gt_spec);
    rep.config_int("n_max", spec.common.n_max);
    rep.config_num("tail_tolerance", spec.common.tail_tolerance);
    rep.config("format", spec.common.format);
    rep.begin({"index", "value", "gt", "n_max", "success_probability", "fidelity_to_ideal",
               "status", "detail"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row &row = rows[i];
        rep.row({Cell::integer(static_cast<long long>(i)), Cell::num(row.value),
                 row.ok ? Cell::num(row.gt) : Cell::none(),
                 row.n_max > 0 ? Cell::integer(row.n_max) : Cell::none(),
                 row.ok ? Cell::num(row.success) : Cell::none(),
                 row.ok ? Cell::num(row.fidelity) : Cell::none(), Cell::str(row.status),
                 row.detail.empty() ? Cell::none() : Cell::str(row.detail)});
    }
    write_output(spec.common.output, buffer.str());
    return kExitOk;
}

int cmd_bell_check(const RunConfig &config) {
    const double kTol = 1e-12;
    std::array<CompositeState, 4> basis = bell_basis();
    std::array<BellVariant, 4> variants{BellVariant::PsiPlus, BellVariant::PsiMinus,
                                        BellVariant::PhiMinus, BellVariant::PhiPlus};
    // Images of each Bell state under the rotation on the second atom.
    std::array<BellVariant, 4> rotated{BellVariant::PhiMinus, BellVariant::PhiPlus,
                                       BellVariant::PsiPlus, BellVariant::PsiMinus};

    std::ostringstream buffer;
    Report rep(buffer, parse_format(config.common.format));
    rep.config("command", "bell-check");
    rep.config_num("tolerance", kTol);
    rep.config("format", config.common.format);
    rep.begin({"record", "left", "right", "value", "target", "pass"});

    std::string first_failure;
    auto check = [&](const std::string &record, const std::string &left,
                     const std::string &right, double value, double target) {
        bool pass = std::abs(value - target) <= kTol;
        if (!pass && first_failure.empty()) {
            first_failure = record + " " + left + " vs " + right + ": got " + fmt17(value) +
                            ", want " + fmt17(target);
        }
        rep.row({Cell::str(record), Cell::str(left), Cell::str(right), Cell::num(value),
                 Cell::num(target), Cell::integer(pass ? 1 : 0)});
    };

    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            check("gram", to_string(variants[i]), to_string(variants[j]),
                  fidelity(basis[i], basis[j]), i == j ? 1.0 : 0.0);
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        CompositeState image =
            apply_atomic_unitary(basis[i], 1, AtomicUnitary2x2::bell_rotation());
        check("rotation", to_string(variants[i]), to_string(rotated[i]),
              fidelity(image, basis[static_cast<std::size_t>(rotated[i])]), 1.0);
    }

    write_output(config.common.output, buffer.str());
    if (!first_failure.empty()) {
        std::cerr << "bell-check failed: " << first_failure << "\n";
        return kExitCheck;
    }
    return kExitOk;
}

int cmd_compare_models(const RunConfig &config) {
    ResolvedInput in = resolve_input(config.input);
    Amp alpha = resolve_alpha(config.common);
    int n_max = resolve_n_max(config.common, alpha);

    ModelComparison mc = compare_models(in.zeta, in.xi, alpha, n_max);

    std::ostringstream buffer;
    Report rep(buffer, parse_format(config.common.format));
    echo_common(rep, "compare-models", config.common, alpha, n_max);
    echo_input(rep, in);
    rep.begin({"record", "label", "physical_premerge", "qubit_premerge",
               "physical_probability", "qubit_probability", "physical_fidelity",
               "qubit_fidelity", "max_probability_deviation", "max_fidelity_deviation",
               "deviation_bound", "e3_probability", "merge_probability"});
    for (const ComparisonRow &row : mc.rows) {
        rep.row({Cell::str("outcome"), Cell::str(row.label), Cell::num(row.physical_premerge),
                 Cell::num(row.qubit_premerge), Cell::num(row.physical_probability),
                 Cell::num(row.qubit_probability), Cell::num(row.physical_fidelity),
                 Cell::num(row.qubit_fidelity), Cell::none(), Cell::none(), Cell::none(),
                 Cell::none(), Cell::none()});
    }
    rep.row({Cell::str("summary"), Cell::none(), Cell::none(), Cell::none(), Cell::none(),
             Cell::none(), Cell::none(), Cell::none(),
             Cell::num(mc.max_probability_deviation), Cell::num(mc.max_fidelity_deviation),
             Cell::num(mc.deviation_bound), Cell::num(mc.e3_probability),
             Cell::num(mc.merge_probability)});
    write_output(config.common.output, buffer.str());
    return kExitOk;
}

int run_protected(const std::function<int()> &body) {
    try {
        return body();
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const TruncationError &e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return kExitTruncation;
    } catch (const PostSelectionError &e) {
        std::cerr << "post-selection failure: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const DomainError &e) {
        std::cerr << "protocol failure: " << e.what() << "\n";
        return kExitProtocol;
    } catch (const CheckError &e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheck;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheck;
    }
}

}  // namespace lambdacav::cli
