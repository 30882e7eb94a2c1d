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

#include "lambdacav/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace lambdacav {

namespace {

constexpr double kPi = std::numbers::pi;

struct StageDiagnostics {
    CoherentDiagnostics coherent;
    DisplaceDiagnostics displacement;
    JcDiagnostics jc;
    double tail = 0.0;
};

void merge_stage(RunDiagnostics &out, const StageDiagnostics &stage) {
    if (stage.coherent.discarded_mass >= out.coherent_discarded_mass) {
        out.coherent_discarded_mass = stage.coherent.discarded_mass;
        out.coherent_renorm_factor = stage.coherent.renorm_factor;
    }
    out.displace_unitarity_defect =
        std::max(out.displace_unitarity_defect, stage.displacement.unitarity_defect);
    out.jc_clipped_probability =
        std::max(out.jc_clipped_probability, stage.jc.clipped_probability);
    out.jc_top_level_warning = out.jc_top_level_warning || stage.jc.top_level_warning;
    out.max_tail_mass = std::max(out.max_tail_mass, stage.tail);
}

// Shared front section of both pipelines: two three-level atoms dropped
// through a cavity in |alpha| at phi = pi, then displacement and the probe
// appended in |f>. The first two subsystems must already be the atoms.
CompositeState run_cavity_stage(CompositeState atoms, Amp alpha, Amp displacement,
                                const CavityMode &mode, StageDiagnostics &stage) {
    CompositeState s = tensor(std::move(atoms), coherent_state(alpha, mode, &stage.coherent));
    std::size_t cavity = s.subsystems.size() - 1;
    s = dispersive_lambda_evolve(s, 0, cavity, kPi);
    s = dispersive_lambda_evolve(s, 1, cavity, kPi);
    s = displace(s, cavity, displacement, &stage.displacement);
    stage.tail = tail_mass(s, cavity);
    return tensor(std::move(s), atom2_state(kLevelF));
}

std::size_t variant_index(BellVariant v) { return static_cast<std::size_t>(v); }

int round_mean_photon(Amp alpha) {
    double a2 = 2.0 * std::abs(alpha);
    long n = std::llround(a2 * a2);
    if (n < 1) {
        std::ostringstream msg;
        msg << "probe pulse heuristic undefined: displaced mean photon number " << a2 * a2
            << " rounds to zero";
        throw DomainError(msg.str());
    }
    return static_cast<int>(n);
}

// e3 probability of the prepared pre-probe state after a JC pulse of
// length gt.
double e3_probability_at(const CompositeState &pre_probe, std::size_t probe,
                         std::size_t cavity, double gt) {
    CompositeState evolved = jc_evolve(pre_probe, probe, cavity, gt);
    return marginal_distribution(evolved, probe)[kLevelE];
}

const Branch *find_outcome(const std::vector<Branch> &branches, int l1, int l2) {
    for (const Branch &br : branches) {
        if (br.labels.size() == 2 && br.labels[0].second == l1 && br.labels[1].second == l2) {
            return &br;
        }
    }
    return nullptr;
}

double draw_uniform(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

const char *to_string(BellVariant v) {
    switch (v) {
        case BellVariant::PsiPlus:
            return "psi-plus";
        case BellVariant::PsiMinus:
            return "psi-minus";
        case BellVariant::PhiMinus:
            return "phi-minus";
        case BellVariant::PhiPlus:
            return "phi-plus";
    }
    return "?";
}

std::array<CompositeState, 4> bell_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    auto two_atoms = [] {
        return CompositeState{{SubsystemKind::atom3(), SubsystemKind::atom3()},
                              std::vector<Amp>(9)};
    };
    std::size_t bb = kLevelB * 3 + kLevelB, cc = kLevelC * 3 + kLevelC;
    std::size_t bc = kLevelB * 3 + kLevelC, cb = kLevelC * 3 + kLevelB;

    std::array<CompositeState, 4> basis{two_atoms(), two_atoms(), two_atoms(), two_atoms()};
    basis[variant_index(BellVariant::PsiPlus)].amps[bb] = r;
    basis[variant_index(BellVariant::PsiPlus)].amps[cc] = r;
    basis[variant_index(BellVariant::PsiMinus)].amps[bb] = r;
    basis[variant_index(BellVariant::PsiMinus)].amps[cc] = -r;
    basis[variant_index(BellVariant::PhiMinus)].amps[bc] = r;
    basis[variant_index(BellVariant::PhiMinus)].amps[cb] = -r;
    basis[variant_index(BellVariant::PhiPlus)].amps[bc] = r;
    basis[variant_index(BellVariant::PhiPlus)].amps[cb] = r;
    return basis;
}

EprResult prepare_epr(Amp alpha, double probe_gt, BellVariant variant, int n_max,
                      double tail_tolerance) {
    if (!std::isfinite(probe_gt)) throw DomainError("probe_gt must be finite");
    CavityMode mode{n_max, tail_tolerance};

    // Displacement sign selects the even (+alpha) or odd (-alpha) merge.
    bool plus_family = variant == BellVariant::PsiPlus || variant == BellVariant::PhiMinus;
    Amp injection = plus_family ? alpha : -alpha;

    StageDiagnostics stage;
    CompositeState s = run_cavity_stage(tensor(atom3_state(kLevelB), atom3_state(kLevelB)),
                                        alpha, injection, mode, stage);
    s = jc_evolve(s, 3, 2, probe_gt, &stage.jc);
    PostSelection e3 = post_select(s, 3, kLevelE);

    CompositeState pair = e3.state;  // (atom, atom, cavity)
    if (variant == BellVariant::PhiMinus || variant == BellVariant::PhiPlus) {
        pair = apply_atomic_unitary(pair, 1, AtomicUnitary2x2::bell_rotation());
    }
    FactorResult fr = factor_out(pair, {0, 1});

    EprResult out;
    out.success_probability = e3.probability;
    out.pair_state = std::move(fr.factor);
    out.fidelity_to_ideal = fidelity(out.pair_state, bell_basis()[variant_index(variant)]);
    merge_stage(out.diagnostics, stage);
    out.diagnostics.factor_residual = fr.residual;
    return out;
}

double probe_pulse_heuristic(Amp alpha) {
    return kPi / (2.0 * std::sqrt(static_cast<double>(round_mean_photon(alpha))));
}

ProbePulse probe_pulse_optimize(Amp alpha, int n_max, double tail_tolerance) {
    int nbar = round_mean_photon(alpha);
    CavityMode mode{n_max, tail_tolerance};

    StageDiagnostics stage;
    CompositeState pre = run_cavity_stage(tensor(atom3_state(kLevelB), atom3_state(kLevelB)),
                                          alpha, alpha, mode, stage);
    const std::size_t probe = 3, cavity = 2;
    auto eval = [&](double gt) { return e3_probability_at(pre, probe, cavity, gt); };

    // Coarse scan of (0, 2 pi / sqrt(nbar)].
    const int kGridPoints = 64;
    double hi = 2.0 * kPi / std::sqrt(static_cast<double>(nbar));
    double step = hi / kGridPoints;
    double best_gt = step, best_p = -1.0;
    int best_k = 1;
    for (int k = 1; k <= kGridPoints; ++k) {
        double gt = step * k;
        double p = eval(gt);
        if (p > best_p) {
            best_p = p;
            best_gt = gt;
            best_k = k;
        }
    }

    // Golden-section refinement inside the bracketing grid cells.
    double lo = best_k > 1 ? step * (best_k - 1) : step * 0.25;
    double up = best_k < kGridPoints ? step * (best_k + 1) : hi;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = up - golden * (up - lo);
    double x2 = lo + golden * (up - lo);
    double f1 = eval(x1), f2 = eval(x2);
    while (up - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (up - lo);
            f2 = eval(x2);
        } else {
            up = x2;
            x2 = x1;
            f2 = f1;
            x1 = up - golden * (up - lo);
            f1 = eval(x1);
        }
    }
    double refined = 0.5 * (lo + up);
    double refined_p = eval(refined);
    if (refined_p > best_p) {
        best_p = refined_p;
        best_gt = refined;
    }
    // The heuristic pulse is always a candidate, so the optimizer can never
    // report a worse value than it.
    double heur = probe_pulse_heuristic(alpha);
    double heur_p = eval(heur);
    if (heur_p > best_p) {
        best_p = heur_p;
        best_gt = heur;
    }

    ProbePulse out;
    out.gt = best_gt;
    out.e3_probability = best_p;
    out.chi_f_residual = std::max(0.0, 1.0 - 2.0 * best_p);
    return out;
}

std::string outcome_label(int a1_level, int a2_level) {
    auto name = [](int level) {
        switch (level) {
            case kLevelA:
                return 'a';
            case kLevelB:
                return 'b';
            default:
                return 'c';
        }
    };
    return std::string{name(a1_level), name(a2_level)};
}

AtomicUnitary2x2 correction_for(int a1_level, int a2_level) {
    auto valid = [](int level) { return level == kLevelB || level == kLevelC; };
    if (!valid(a1_level) || !valid(a2_level)) {
        throw DomainError("correction defined only for detections in b or c");
    }
    return a1_level == a2_level ? AtomicUnitary2x2::identity() : AtomicUnitary2x2::bc_swap();
}

TeleportResult teleport(const TeleportConfig &config) {
    double input_norm = std::norm(config.zeta) + std::norm(config.xi);
    if (std::abs(input_norm - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "input qubit not normalized: |zeta|^2 + |xi|^2 = " << input_norm;
        throw DomainError(msg.str());
    }
    if (!std::isfinite(config.probe_gt)) throw DomainError("probe_gt must be finite");
    int n_max = config.n_max > 0 ? config.n_max : default_n_max(config.alpha);
    CavityMode mode{n_max, config.tail_tolerance};

    TeleportResult out;

    // Stage 1: the shared A2-A4 pair.
    EprResult epr = prepare_epr(config.alpha, config.probe_gt, BellVariant::PsiPlus, n_max,
                                config.tail_tolerance);
    out.epr_success_probability = epr.success_probability;
    out.diagnostics = epr.diagnostics;

    // Stage 2: A1 and A2 through Alice's fresh cavity, then the probe.
    CompositeState input = atom3_superposition(config.zeta, config.xi);
    StageDiagnostics stage;
    CompositeState s = run_cavity_stage(tensor(input, epr.pair_state), config.alpha,
                                        config.alpha, mode, stage);
    const std::size_t cavity = 3, probe = 4;
    s = jc_evolve(s, probe, cavity, config.probe_gt, &stage.jc);
    merge_stage(out.diagnostics, stage);

    // A1/A2 marginals are untouched by the cavity-only displacement and
    // probe steps, so reading them here equals reading them pre-merge.
    std::vector<Branch> premerge = enumerate_joint(s, {0, 1});
    for (std::size_t k = 0; k < kOutcomeOrder.size(); ++k) {
        const Branch *br = find_outcome(premerge, kOutcomeOrder[k].first, kOutcomeOrder[k].second);
        out.premerge_probabilities[k] = br != nullptr ? br->probability : 0.0;
    }

    std::vector<Branch> probe_branches = measure(s, probe);
    PostSelection e3 = post_select(s, probe, kLevelE);
    out.e3_probability = e3.probability;

    std::vector<Branch> detections = enumerate_joint(e3.state, {0, 1});
    for (std::size_t k = 0; k < kOutcomeOrder.size(); ++k) {
        auto [l1, l2] = kOutcomeOrder[k];
        const Branch *br = find_outcome(detections, l1, l2);
        if (br == nullptr) {
            throw SimError("internal: detection outcome " + outcome_label(l1, l2) +
                           " missing from the branch set");
        }
        FactorResult fr = factor_out(normalized(br->state), {0});
        out.diagnostics.factor_residual =
            std::max(out.diagnostics.factor_residual, fr.residual);

        TeleportOutcome &rec = out.outcomes[k];
        rec.a1_level = l1;
        rec.a2_level = l2;
        rec.probability = br->probability;
        rec.fidelity_before_correction = fidelity(fr.factor, input);
        rec.corrected_a4_state = apply_atomic_unitary(fr.factor, 0, correction_for(l1, l2));
        rec.fidelity_to_input = fidelity(rec.corrected_a4_state, input);
    }

    if (config.mode == TeleportMode::Sample) {
        std::mt19937_64 gen(config.seed);
        const Branch &probe_hit = sample_at(probe_branches, draw_uniform(gen));
        SampledPath path;
        if (probe_hit.labels[0].second == kLevelE) {
            const Branch &detected = sample_at(detections, draw_uniform(gen));
            path.e3_detected = true;
            path.a1_level = detected.labels[0].second;
            path.a2_level = detected.labels[1].second;
            path.probability = e3.probability * detected.probability;
        } else {
            path.e3_detected = false;
            path.probability = probe_hit.probability;
        }
        out.sampled_path = path;
    }
    return out;
}

}  // namespace lambdacav
