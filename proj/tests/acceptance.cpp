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

// Acceptance gate: one self-contained check per release criterion, each
// printing a single [PASS]/[FAIL] line with the measured numbers. Reference
// values come from the independent series oracles in oracles.cpp, never from
// the library's own evaluation path. The CLI-facing criteria need the
// LAMBDACAV_CLI environment variable to point at the built executable.

#include <lambdacav/errors.hpp>
#include <lambdacav/fockspace.hpp>
#include <lambdacav/measurement.hpp>
#include <lambdacav/operators.hpp>
#include <lambdacav/protocols.hpp>
#include <lambdacav/qubitmodel.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace {

using namespace lambdacav;

const double kPi = std::numbers::pi;

int g_failures = 0;

void report(int index, const char *name, bool pass, const std::string &detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt(const char *format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double max_abs_diff(const CompositeState &a, const CompositeState &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
    return worst;
}

double max_abs(const CompositeState &a) {
    double worst = 0.0;
    for (const Amp &z : a.amps) worst = std::max(worst, std::abs(z));
    return worst;
}

struct CliRun {
    int exit_code = -1;
    std::string out;
};

const char *cli_path() { return std::getenv("LAMBDACAV_CLI"); }

CliRun run_cli(const std::string &args) {
    CliRun r;
    const char *bin = cli_path();
    if (bin == nullptr) return r;
    static int counter = 0;
    std::ostringstream path;
    path << "/tmp/lambdacav_acceptance_" << getpid() << "_" << counter++;
    std::string cmd = std::string(bin) + " " + args + " >" + path.str() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(path.str(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    r.out = s.str();
    std::remove(path.str().c_str());
    return r;
}

// --- criterion 1: parity-projector algebra on even/odd coherent states ----

void criterion_parity_projectors() {
    const CavityMode mode{48, kDefaultTailTolerance};
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0}) {
        CompositeState right = coherent_state(Amp(a, 0), mode);
        CompositeState left = coherent_state(Amp(-a, 0), mode);
        CompositeState even = add(right, left);
        CompositeState odd = add(right, scaled(left, Amp(-1, 0)));

        worst = std::max(worst, max_abs_diff(parity_project(even, 0, ParitySign::Plus), even));
        worst = std::max(worst, max_abs(parity_project(odd, 0, ParitySign::Plus)));
        worst = std::max(worst,
                         max_abs_diff(parity_project(odd, 0, ParitySign::Minus), scaled(odd, Amp(-1, 0))));
        worst = std::max(worst, max_abs(parity_project(even, 0, ParitySign::Minus)));
    }
    report(1, "parity projectors on even/odd states", worst <= 1e-10,
           fmt("max amplitude deviation %.3e (tol 1e-10) at alpha in {0.5, 1, 2}, n_max 48", worst));
}

// --- criterion 2: step-by-step pipeline against constructed kets ----------

void criterion_pipeline_transcription() {
    auto start = std::chrono::steady_clock::now();

    const Amp alpha(2, 0);
    const CavityMode mode{48, kDefaultTailTolerance};
    CompositeState b = atom3_state(kLevelB), c = atom3_state(kLevelC);
    CompositeState right = coherent_state(alpha, mode);
    CompositeState left = coherent_state(-alpha, mode);
    CompositeState even = add(right, left);
    CompositeState odd = add(right, scaled(left, Amp(-1, 0)));

    // First atom crosses the dispersive cavity.
    CompositeState s = tensor(tensor(b, b), right);
    s = dispersive_lambda_evolve(s, 0, 2, kPi);
    CompositeState ref_one = scaled(
        add(tensor(tensor(b, b), even), scaled(tensor(tensor(c, b), odd), Amp(-1, 0))), Amp(0.5, 0));
    double f1 = fidelity(s, ref_one);

    // Second atom crosses: the cavity cat locks the atoms into bb/cc.
    s = dispersive_lambda_evolve(s, 1, 2, kPi);
    CompositeState ref_two =
        scaled(add(tensor(tensor(b, b), even), tensor(tensor(c, c), odd)), Amp(0.5, 0));
    double f2 = fidelity(s, ref_two);

    // Displacement by +alpha maps the cat onto {|2 alpha>, |0>}.
    s = displace(s, 2, alpha);
    CompositeState bb = tensor(b, b), cc = tensor(c, c);
    CompositeState ref_three =
        scaled(add(tensor(add(bb, cc), coherent_state(Amp(4, 0), mode)),
                   tensor(add(bb, scaled(cc, Amp(-1, 0))), fock_state(0, mode))),
               Amp(0.5, 0));
    double f3 = fidelity(s, ref_three);

    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double worst = std::min({f1, f2, f3});
    report(2, "pipeline transcription", worst >= 1.0 - 1e-9 && seconds < 1.0,
           fmt("step fidelities %.12f / %.12f / %.12f (floor 1 - 1e-9), %.2f s (< 1 s)", f1, f2, f3,
               seconds));
}

// --- criterion 3: EPR preparation exactness --------------------------------

void criterion_epr_exactness() {
    const Amp alpha(2, 0);
    const double gt = probe_pulse_heuristic(alpha);
    const double oracle_p = oracles::probe_click_probability(2.0, gt);
    const std::array<CompositeState, 4> ideal = bell_basis();

    double worst_fid = 1.0, worst_prob_dev = 0.0, min_success = 1.0;
    for (int v = 0; v < 4; ++v) {
        EprResult r = prepare_epr(alpha, gt, static_cast<BellVariant>(v), default_n_max(alpha));
        worst_fid = std::min(worst_fid, fidelity(r.pair_state, ideal[static_cast<std::size_t>(v)]));
        worst_prob_dev = std::max(worst_prob_dev, std::abs(r.success_probability - oracle_p));
        min_success = std::min(min_success, r.success_probability);
    }
    report(3, "EPR preparation exactness",
           worst_fid >= 1.0 - 1e-8 && min_success > 0.0 && worst_prob_dev <= 1e-10,
           fmt("worst fidelity %.12f (floor 1 - 1e-8), success %.6f > 0, |success - oracle| %.3e "
               "(tol 1e-10)",
               worst_fid, min_success, worst_prob_dev));
}

// --- criterion 4: optimized probe pulse ------------------------------------

void criterion_probe_optimum() {
    const Amp alpha(2, 0);
    ProbePulse pulse = probe_pulse_optimize(alpha, default_n_max(alpha));
    EprResult heuristic =
        prepare_epr(alpha, probe_pulse_heuristic(alpha), BellVariant::PsiPlus, default_n_max(alpha));
    oracles::PulseOptimum oracle = oracles::best_probe_pulse(2.0);

    bool pass = pulse.e3_probability > 0.40 &&
                pulse.e3_probability >= heuristic.success_probability - 1e-12 &&
                std::abs(pulse.e3_probability - oracle.p) <= 1e-9;
    report(4, "optimized probe success at alpha 2", pass,
           fmt("p* %.12f at gt %.9f (> 0.40, >= heuristic %.12f - 1e-12, oracle dev %.3e), "
               "undetected residual %.12f",
               pulse.e3_probability, pulse.gt, heuristic.success_probability,
               std::abs(pulse.e3_probability - oracle.p), pulse.chi_f_residual));
}

// --- criteria 5 and 6: randomized teleportation + input independence -------

void criterion_teleportation(bool &c6_done) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0x1a2b3c4d5e6f7788ULL);
    std::normal_distribution<double> gauss;

    const std::array<double, 2> alphas{1.0, 2.0};
    std::array<double, 2> heuristics{}, oracle_e3{};
    for (std::size_t ai = 0; ai < 2; ++ai) {
        heuristics[ai] = probe_pulse_heuristic(Amp(alphas[ai], 0));
        oracle_e3[ai] = oracles::probe_click_probability(alphas[ai], heuristics[ai]);
    }

    double worst_fid = 1.0, worst_prob_dev = 0.0, worst_premerge_dev = 0.0, worst_e3_dev = 0.0;
    std::array<std::array<double, 4>, 2> prob_lo, prob_hi;
    std::array<double, 2> e3_lo, e3_hi;
    for (std::size_t ai = 0; ai < 2; ++ai) {
        prob_lo[ai].fill(1.0);
        prob_hi[ai].fill(0.0);
        e3_lo[ai] = 1.0;
        e3_hi[ai] = 0.0;
    }

    const int kPairs = 200;
    for (int k = 0; k < kPairs; ++k) {
        Amp zeta(gauss(rng), gauss(rng)), xi(gauss(rng), gauss(rng));
        double n = std::sqrt(std::norm(zeta) + std::norm(xi));
        zeta /= n;
        xi /= n;

        for (std::size_t ai = 0; ai < 2; ++ai) {
            TeleportConfig cfg;
            cfg.zeta = zeta;
            cfg.xi = xi;
            cfg.alpha = Amp(alphas[ai], 0);
            cfg.probe_gt = heuristics[ai];
            TeleportResult r = teleport(cfg);

            std::array<double, 4> premerge = oracles::premerge_marginals(zeta, xi, alphas[ai]);
            for (std::size_t i = 0; i < 4; ++i) {
                worst_fid = std::min(worst_fid, r.outcomes[i].fidelity_to_input);
                worst_prob_dev = std::max(worst_prob_dev, std::abs(r.outcomes[i].probability - 0.25));
                worst_premerge_dev = std::max(
                    worst_premerge_dev, std::abs(r.premerge_probabilities[i] - premerge[i]));
                prob_lo[ai][i] = std::min(prob_lo[ai][i], r.outcomes[i].probability);
                prob_hi[ai][i] = std::max(prob_hi[ai][i], r.outcomes[i].probability);
            }
            worst_e3_dev = std::max(worst_e3_dev, std::abs(r.e3_probability - oracle_e3[ai]));
            e3_lo[ai] = std::min(e3_lo[ai], r.e3_probability);
            e3_hi[ai] = std::max(e3_hi[ai], r.e3_probability);
        }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool c5 = worst_fid >= 1.0 - 1e-8 && worst_prob_dev <= 1e-8 && worst_premerge_dev <= 1e-10 &&
              worst_e3_dev <= 1e-10 && seconds < 60.0;
    report(5, "randomized teleportation exactness", c5,
           fmt("%d inputs x alpha {1, 2}: worst fidelity %.12f (floor 1 - 1e-8), |p - 1/4| %.3e "
               "(tol 1e-8), oracle premerge dev %.3e / e3 dev %.3e (tol 1e-10), %.1f s (< 60 s)",
               kPairs, worst_fid, worst_prob_dev, worst_premerge_dev, worst_e3_dev, seconds));

    double prob_spread = 0.0, e3_spread = 0.0;
    for (std::size_t ai = 0; ai < 2; ++ai) {
        for (std::size_t i = 0; i < 4; ++i)
            prob_spread = std::max(prob_spread, prob_hi[ai][i] - prob_lo[ai][i]);
        e3_spread = std::max(e3_spread, e3_hi[ai] - e3_lo[ai]);
    }
    report(6, "detection marginals independent of the input", prob_spread <= 1e-8,
           fmt("outcome-probability spread %.3e over all inputs (tol 1e-8), e3 spread %.3e",
               prob_spread, e3_spread));
    c6_done = true;
}

// --- criterion 7: qubit-model equivalence ----------------------------------

void criterion_qubit_model() {
    const Amp zeta(0.8, 0), xi(0.6, 0);
    ModelComparison mid = compare_models(zeta, xi, Amp(2, 0), default_n_max(Amp(2, 0)));
    ModelComparison low = compare_models(zeta, xi, Amp(1, 0), default_n_max(Amp(1, 0)));
    ModelComparison high = compare_models(zeta, xi, Amp(3, 0), default_n_max(Amp(3, 0)));

    bool pass = mid.max_probability_deviation <= 5e-3 && mid.max_fidelity_deviation <= 1e-8 &&
                high.max_probability_deviation < low.max_probability_deviation;
    report(7, "qubit-model equivalence", pass,
           fmt("alpha 2 probability deviation %.3e (tol 5e-3), fidelity deviation %.3e (tol 1e-8); "
               "deviation alpha 3 %.3e < alpha 1 %.3e",
               mid.max_probability_deviation, mid.max_fidelity_deviation,
               high.max_probability_deviation, low.max_probability_deviation));
}

// --- criterion 8: unitarity and truncation hygiene --------------------------

CompositeState random_low_support_state(std::mt19937_64 &rng, const CavityMode &mode,
                                        int support_max) {
    CompositeState s =
        tensor(tensor(atom3_state(kLevelA), atom2_state(kLevelF)), fock_state(0, mode));
    std::normal_distribution<double> gauss;
    for (std::size_t flat = 0; flat < s.dim(); ++flat) {
        s.amps[flat] = s.digit(flat, 2) <= support_max ? Amp(gauss(rng), gauss(rng)) : Amp(0, 0);
    }
    return normalized(s);
}

void criterion_hygiene() {
    const CavityMode mode{32, kDefaultTailTolerance};
    std::mt19937_64 rng(0x8d8d8d8d);
    std::uniform_real_distribution<double> angle(0.0, kPi);

    double worst_norm_dev = 0.0, worst_tail = 0.0;
    for (int k = 0; k < 40; ++k) {
        // Flat random spectra spread further under displacement than coherent
        // ones; a 16-level gap keeps the displaced tail far below 1e-10.
        CompositeState s = random_low_support_state(rng, mode, 16);
        worst_tail = std::max(worst_tail, tail_mass(s, 2));

        double theta = angle(rng), phi = 2.0 * angle(rng);
        AtomicUnitary2x2 u;
        u.m = {Amp(std::cos(theta), 0), -std::polar(std::sin(theta), phi),
               std::polar(std::sin(theta), -phi), Amp(std::cos(theta), 0)};

        const std::array<CompositeState, 8> bank = {
            number_phase(s, 2, 0.7),
            number_phase(s, 2, kPi),
            dispersive_lambda_evolve(s, 0, 2, 0.9),
            dispersive_lambda_evolve(s, 0, 2, kPi),
            jc_evolve(s, 1, 2, 0.8),
            displace(s, 2, Amp(0.3, 0)),
            apply_atomic_unitary(s, 0, u),
            apply_atomic_unitary(s, 1, AtomicUnitary2x2::bc_swap()),
        };
        for (const CompositeState &t : bank) {
            worst_norm_dev = std::max(worst_norm_dev, std::abs(t.norm2() - 1.0));
            worst_tail = std::max(worst_tail, tail_mass(t, 2));
        }
    }
    bool bank_ok = worst_norm_dev <= 1e-10 && worst_tail < 1e-10;

    bool library_throws = false;
    try {
        prepare_epr(Amp(6, 0), probe_pulse_heuristic(Amp(6, 0)), BellVariant::PsiPlus, 20);
    } catch (const TruncationError &) {
        library_throws = true;
    }
    CliRun cli = run_cli("epr --alpha 6 --nmax 20");
    bool cli_ok = cli.exit_code == 2;

    report(8, "unitarity and truncation hygiene", bank_ok && library_throws && cli_ok,
           fmt("norm deviation %.3e (tol 1e-10), tail %.3e (< 1e-10) over 40 states x 8 unitaries; "
               "alpha 6 at n_max 20: library throws %s, CLI exit %d (want 2)",
               worst_norm_dev, worst_tail, library_throws ? "yes" : "no", cli.exit_code));
}

// --- criterion 9: seeded CLI determinism ------------------------------------

void criterion_determinism() {
    if (cli_path() == nullptr) {
        report(9, "seeded CLI determinism", false, "LAMBDACAV_CLI not set");
        return;
    }
    const std::string args = "teleport --alpha 1 --sample --seed 97531";
    CliRun a = run_cli(args);
    CliRun b = run_cli(args);
    bool pass = a.exit_code == 0 && b.exit_code == 0 && !a.out.empty() && a.out == b.out;
    report(9, "seeded CLI determinism", pass,
           fmt("two runs of '%s': %zu bytes, byte-identical %s", args.c_str(), a.out.size(),
               a.out == b.out ? "yes" : "no"));
}

}  // namespace

int main() {
    std::printf("lambdacav acceptance gate\n");
    try {
        criterion_parity_projectors();
        criterion_pipeline_transcription();
        criterion_epr_exactness();
        criterion_probe_optimum();
        bool c6_done = false;
        criterion_teleportation(c6_done);
        if (!c6_done) report(6, "detection marginals independent of the input", false, "not evaluated");
        criterion_qubit_model();
        criterion_hygiene();
        criterion_determinism();
    } catch (const std::exception &e) {
        std::printf("[FAIL] unexpected exception: %s\n", e.what());
        ++g_failures;
    }
    std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
