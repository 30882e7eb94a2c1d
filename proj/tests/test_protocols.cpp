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

#include "doctest.h"
#include "lambdacav/protocols.hpp"
#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace lambdacav;

namespace {

const double kPi = std::numbers::pi;

TeleportConfig base_config(Amp zeta, Amp xi, double alpha) {
    TeleportConfig cfg;
    cfg.zeta = zeta;
    cfg.xi = xi;
    cfg.alpha = Amp(alpha, 0);
    cfg.probe_gt = probe_pulse_heuristic(cfg.alpha);
    return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("protocols");

TEST_CASE("bell basis is orthonormal with the documented amplitude patterns") {
    auto basis = bell_basis();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double expect = i == j ? 1.0 : 0.0;
            CHECK(std::abs(inner_product(basis[i], basis[j]) - Amp(expect, 0)) < 1e-14);
        }
    }

    // Flat indices on two three-level atoms: bb=4, bc=5, cb=7, cc=8.
    CHECK(std::abs(basis[0].amps[4] - Amp(inv_sqrt2, 0)) < 1e-15);  // PsiPlus
    CHECK(std::abs(basis[0].amps[8] - Amp(inv_sqrt2, 0)) < 1e-15);
    CHECK(std::abs(basis[1].amps[8] - Amp(-inv_sqrt2, 0)) < 1e-15);  // PsiMinus
    CHECK(std::abs(basis[2].amps[5] - Amp(inv_sqrt2, 0)) < 1e-15);   // PhiMinus
    CHECK(std::abs(basis[2].amps[7] - Amp(-inv_sqrt2, 0)) < 1e-15);
    CHECK(std::abs(basis[3].amps[5] - Amp(inv_sqrt2, 0)) < 1e-15);  // PhiPlus
    CHECK(std::abs(basis[3].amps[7] - Amp(inv_sqrt2, 0)) < 1e-15);

    // The {b,c} rotation walks the basis in pairs: R2 PsiPlus = PhiMinus,
    // R2 PsiMinus = PhiPlus.
    CompositeState r_psi_plus = apply_atomic_unitary(basis[0], 1, AtomicUnitary2x2::bell_rotation());
    CHECK(fidelity(r_psi_plus, basis[2]) == doctest::Approx(1.0).epsilon(1e-13));
    CompositeState r_psi_minus =
        apply_atomic_unitary(basis[1], 1, AtomicUnitary2x2::bell_rotation());
    CHECK(fidelity(r_psi_minus, basis[3]) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("epr preparation hits each Bell state with the oracle success rate") {
    const double alpha = 1.0;
    const int n_max = 26;
    const double gt = probe_pulse_heuristic(Amp(alpha, 0));
    CHECK(gt == doctest::Approx(kPi / 4.0).epsilon(1e-15));

    double oracle_p = oracles::probe_click_probability(alpha, gt);
    auto basis = bell_basis();

    for (auto variant :
         {BellVariant::PsiPlus, BellVariant::PsiMinus, BellVariant::PhiMinus, BellVariant::PhiPlus}) {
        EprResult r = prepare_epr(Amp(alpha, 0), gt, variant, n_max);
        CAPTURE(to_string(variant));
        CHECK(r.fidelity_to_ideal >= 1.0 - 1e-12);
        CHECK(fidelity(r.pair_state, basis[static_cast<std::size_t>(variant)]) >= 1.0 - 1e-12);
        CHECK(std::abs(r.success_probability - oracle_p) < 1e-12);
        CHECK(r.diagnostics.factor_residual < 1e-12);
        CHECK(r.diagnostics.max_tail_mass < 1e-9);
        CHECK_FALSE(r.diagnostics.jc_top_level_warning);
    }
}

TEST_CASE("epr preparation honors an explicit probe pulse") {
    EprResult r = prepare_epr(Amp(1, 0), 0.3, BellVariant::PsiPlus, 26);
    CHECK(std::abs(r.success_probability - oracles::probe_click_probability(1.0, 0.3)) < 1e-12);
    CHECK(r.fidelity_to_ideal >= 1.0 - 1e-12);
}

TEST_CASE("probe pulse heuristic sets a half-flip at the mean photon number") {
    CHECK(probe_pulse_heuristic(Amp(2, 0)) == doctest::Approx(kPi / 8.0).epsilon(1e-15));
    CHECK(probe_pulse_heuristic(Amp(1, 0)) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    // Rounds the displaced mean |2 alpha|^2; too dim a field has no peak.
    CHECK_THROWS_AS(probe_pulse_heuristic(Amp(0.1, 0)), DomainError);
}

TEST_CASE("probe pulse optimizer agrees with the series-formula optimum") {
    oracles::PulseOptimum best = oracles::best_probe_pulse(1.0);
    ProbePulse pulse = probe_pulse_optimize(Amp(1, 0), 26);

    CHECK(std::abs(pulse.gt - best.gt) < 1e-3);  // flat peak: gt is soft
    CHECK(std::abs(pulse.e3_probability - best.p) < 1e-9);
    CHECK(pulse.chi_f_residual ==
          doctest::Approx(1.0 - 2.0 * pulse.e3_probability).epsilon(1e-12));

    // Never loses to the heuristic pulse.
    double heur = oracles::probe_click_probability(1.0, probe_pulse_heuristic(Amp(1, 0)));
    CHECK(pulse.e3_probability >= heur - 1e-12);
}

TEST_CASE("teleportation reproduces the input on every detection outcome") {
    struct Input {
        Amp zeta, xi;
    };
    const Input inputs[] = {
        {Amp(0.8, 0), Amp(0.6, 0)},
        {Amp(0.36, 0.48), Amp(0.8, 0)},  // complex amplitudes
    };
    const double alpha = 1.5;

    for (const Input &in : inputs) {
        TeleportResult r = teleport(base_config(in.zeta, in.xi, alpha));
        CAPTURE(in.zeta.real());

        double oracle_e3 =
            oracles::probe_click_probability(alpha, probe_pulse_heuristic(Amp(alpha, 0)));
        CHECK(std::abs(r.e3_probability - oracle_e3) < 1e-10);
        // Both stages run the same pulse, so the pair preparation clicks at
        // the same rate.
        CHECK(std::abs(r.epr_success_probability - r.e3_probability) < 1e-12);

        auto marg = oracles::premerge_marginals(in.zeta, in.xi, alpha);
        CompositeState input_ket = atom3_superposition(in.zeta, in.xi);
        for (std::size_t k = 0; k < 4; ++k) {
            const TeleportOutcome &o = r.outcomes[k];
            CHECK(o.a1_level == kOutcomeOrder[k].first);
            CHECK(o.a2_level == kOutcomeOrder[k].second);
            CHECK(std::abs(o.probability - 0.25) < 1e-12);
            CHECK(std::abs(r.premerge_probabilities[k] - marg[k]) < 1e-10);
            CHECK(o.fidelity_to_input >= 1.0 - 1e-10);
            CHECK(fidelity(o.corrected_a4_state, input_ket) >= 1.0 - 1e-10);
            double before = k < 2 ? 1.0 : oracles::swapped_overlap(in.zeta, in.xi);
            CHECK(std::abs(o.fidelity_before_correction - before) < 1e-10);
        }
        CHECK(r.diagnostics.factor_residual < 1e-10);
        CHECK_FALSE(r.sampled_path.has_value());
    }
}

TEST_CASE("the correction table matches the classical feed-forward rule") {
    CHECK(correction_for(kLevelB, kLevelB).m == AtomicUnitary2x2::identity().m);
    CHECK(correction_for(kLevelC, kLevelC).m == AtomicUnitary2x2::identity().m);
    CHECK(correction_for(kLevelB, kLevelC).m == AtomicUnitary2x2::bc_swap().m);
    CHECK(correction_for(kLevelC, kLevelB).m == AtomicUnitary2x2::bc_swap().m);
    CHECK_THROWS_AS(correction_for(kLevelA, kLevelB), DomainError);
}

TEST_CASE("teleportation guards its domain") {
    // Unnormalized input qubit.
    TeleportConfig bad = base_config(Amp(1, 0), Amp(0.5, 0), 1.5);
    CHECK_THROWS_AS(teleport(bad), DomainError);

    // Deliberate under-truncation: a 36-photon field in a 20-level box.
    TeleportConfig tight = base_config(Amp(0.8, 0), Amp(0.6, 0), 6.0);
    tight.n_max = 20;
    CHECK_THROWS_AS(teleport(tight), TruncationError);

    TeleportConfig nan_gt = base_config(Amp(0.8, 0), Amp(0.6, 0), 1.5);
    nan_gt.probe_gt = std::nan("");
    CHECK_THROWS_AS(teleport(nan_gt), DomainError);

    // A zero-length probe pulse never clicks; post-selection must refuse.
    TeleportConfig no_pulse = base_config(Amp(0.8, 0), Amp(0.6, 0), 1.5);
    no_pulse.probe_gt = 0.0;
    CHECK_THROWS_AS(teleport(no_pulse), PostSelectionError);
}

TEST_CASE("sampled trajectories are deterministic and follow the branch weights") {
    TeleportConfig cfg = base_config(Amp(0.8, 0), Amp(0.6, 0), 1.0);
    cfg.mode = TeleportMode::Sample;
    cfg.seed = 7;

    TeleportResult first = teleport(cfg);
    TeleportResult second = teleport(cfg);
    REQUIRE(first.sampled_path.has_value());
    REQUIRE(second.sampled_path.has_value());
    CHECK(first.sampled_path->e3_detected == second.sampled_path->e3_detected);
    CHECK(first.sampled_path->a1_level == second.sampled_path->a1_level);
    CHECK(first.sampled_path->a2_level == second.sampled_path->a2_level);
    CHECK(first.sampled_path->probability ==
          doctest::Approx(second.sampled_path->probability).epsilon(1e-15));

    // Joint trajectory probabilities are consistent with the run's own
    // detection statistics.
    int clicks = 0;
    const int kSeeds = 120;
    for (int seed = 0; seed < kSeeds; ++seed) {
        cfg.seed = static_cast<std::uint64_t>(seed);
        TeleportResult r = teleport(cfg);
        REQUIRE(r.sampled_path.has_value());
        const SampledPath &path = *r.sampled_path;
        if (path.e3_detected) {
            ++clicks;
            bool known = false;
            for (std::size_t k = 0; k < 4; ++k) {
                if (r.outcomes[k].a1_level == path.a1_level &&
                    r.outcomes[k].a2_level == path.a2_level) {
                    known = true;
                    CHECK(std::abs(path.probability -
                                   r.e3_probability * r.outcomes[k].probability) < 1e-12);
                }
            }
            CHECK(known);
        } else {
            CHECK(path.a1_level == -1);
            CHECK(path.a2_level == -1);
            CHECK(std::abs(path.probability - (1.0 - r.e3_probability)) < 1e-12);
        }
    }
    // p(click) is about 0.426 at alpha = 1; allow a wide band for 120 draws.
    CHECK(clicks > kSeeds * 0.28);
    CHECK(clicks < kSeeds * 0.58);
}

TEST_CASE("detection statistics carry no imprint of the teleported state") {
    // No-signaling: Alice's post-selected outcome rates cannot depend on
    // (zeta, xi). The premerge marginals may and do, at order e^{-2 alpha^2}.
    const double alpha = 1.5;
    TeleportResult r1 = teleport(base_config(Amp(0.8, 0), Amp(0.6, 0), alpha));
    TeleportResult r2 = teleport(base_config(Amp(0.6, 0), Amp(0, -0.8), alpha));

    CHECK(std::abs(r1.e3_probability - r2.e3_probability) < 1e-12);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(r1.outcomes[k].probability - r2.outcomes[k].probability) < 1e-12);
    }
    // The finite-alpha imprint lives before the merge: Delta flips sign
    // between these two inputs, so the bb marginals split by q * 2|Delta|/4.
    double split = std::abs(r1.premerge_probabilities[0] - r2.premerge_probabilities[0]);
    double q = std::exp(-2.0 * alpha * alpha);
    CHECK(split == doctest::Approx(0.25 * q * 0.56).epsilon(1e-6));
}

TEST_SUITE_END();
