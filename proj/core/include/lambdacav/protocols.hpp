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

#ifndef LAMBDACAV_PROTOCOLS_HPP
#define LAMBDACAV_PROTOCOLS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "lambdacav/fockspace.hpp"
#include "lambdacav/measurement.hpp"
#include "lambdacav/operators.hpp"

namespace lambdacav {

/// The four Bell states of two three-level atoms restricted to {b, c}:
///   PsiPlus  = (|bb> + |cc>)/sqrt(2)
///   PsiMinus = (|bb> - |cc>)/sqrt(2)
///   PhiMinus = (|bc> - |cb>)/sqrt(2)
///   PhiPlus  = (|bc> + |cb>)/sqrt(2)
enum class BellVariant { PsiPlus, PsiMinus, PhiMinus, PhiPlus };

const char *to_string(BellVariant v);

/// The ideal Bell kets, indexed by BellVariant.
std::array<CompositeState, 4> bell_basis();

/// Aggregated numerical-health report for one protocol run.
struct RunDiagnostics {
    double coherent_discarded_mass = 0.0;  // worst over all coherent preparations
    double coherent_renorm_factor = 1.0;   // matching renormalization factor
    double displace_unitarity_defect = 0.0;
    double jc_clipped_probability = 0.0;   // worst |e, n_max> mass hitting the clip
    bool jc_top_level_warning = false;
    double max_tail_mass = 0.0;            // worst cavity tail seen at checkpoints
    double factor_residual = 0.0;          // worst product-extraction residual
};

struct EprResult {
    double success_probability = 0.0;  // probability of the e3 detection
    CompositeState pair_state;         // two Atom3 subsystems, normalized
    double fidelity_to_ideal = 0.0;
    RunDiagnostics diagnostics;
};

/// Entangles two three-level atoms (both starting in |b>) through a cavity
/// prepared in |alpha>:
///   two dispersive passes at phi = pi, displacement by +alpha
///   (PsiPlus/PhiMinus) or -alpha (PsiMinus/PhiPlus), then a resonant
///   two-level probe sent in |f> for a time gt and post-selected in |e>.
/// Phi variants finish with the Bell rotation on the second atom.
EprResult prepare_epr(Amp alpha, double probe_gt, BellVariant variant, int n_max,
                      double tail_tolerance = kDefaultTailTolerance);

/// gt = pi / (2 sqrt(nbar)) with nbar = round(|2 alpha|^2), the mean photon
/// number of the displaced field the probe actually meets. Throws
/// DomainError when that rounds to zero (alpha too small).
double probe_pulse_heuristic(Amp alpha);

struct ProbePulse {
    double gt = 0.0;
    double e3_probability = 0.0;
    // Probability left in the undetected |f> branch, 1 - 2 * e3_probability,
    // clamped at zero.
    double chi_f_residual = 0.0;
};

/// Maximizes the e3 success probability of the PsiPlus pipeline over
/// gt in (0, 2 pi / sqrt(nbar)]: 64-point grid scan, golden-section
/// refinement of the best bracket to 1e-6 in gt, and the heuristic pulse as
/// a final candidate (so the result never loses to it).
ProbePulse probe_pulse_optimize(Amp alpha, int n_max,
                                double tail_tolerance = kDefaultTailTolerance);

enum class TeleportMode { Enumerate, Sample };

struct TeleportConfig {
    Amp zeta;           // input |b> amplitude
    Amp xi;             // input |c> amplitude; |zeta|^2 + |xi|^2 = 1 within 1e-12
    Amp alpha;          // coherent amplitude of both cavities
    double probe_gt = 0.0;
    int n_max = 0;      // <= 0 selects default_n_max(alpha)
    TeleportMode mode = TeleportMode::Enumerate;
    std::uint64_t seed = 0;  // used in Sample mode
    double tail_tolerance = kDefaultTailTolerance;
};

/// Canonical order of the four joint detection outcomes of atoms A1, A2.
inline constexpr std::array<std::pair<int, int>, 4> kOutcomeOrder = {
    std::pair<int, int>{kLevelB, kLevelB}, std::pair<int, int>{kLevelC, kLevelC},
    std::pair<int, int>{kLevelB, kLevelC}, std::pair<int, int>{kLevelC, kLevelB}};

/// Human-readable outcome label, e.g. "bc".
std::string outcome_label(int a1_level, int a2_level);

struct TeleportOutcome {
    int a1_level = kLevelB;
    int a2_level = kLevelB;
    double probability = 0.0;  // conditioned on the e3 detection
    CompositeState corrected_a4_state;  // single Atom3 subsystem, normalized
    double fidelity_before_correction = 0.0;
    double fidelity_to_input = 0.0;
};

/// The single trajectory taken in Sample mode. When the probe is detected
/// in |f> the run fails and no A1/A2 outcome exists; `probability` is then
/// the failure probability, otherwise the joint probability
/// e3_probability * P(outcome | e3).
struct SampledPath {
    bool e3_detected = false;
    int a1_level = -1;
    int a2_level = -1;
    double probability = 0.0;
};

struct TeleportResult {
    double e3_probability = 0.0;
    std::array<TeleportOutcome, 4> outcomes;  // in kOutcomeOrder
    std::optional<SampledPath> sampled_path;
    // Joint A1/A2 detection marginals before the merge (displacement +
    // probe + e3 post-selection), in kOutcomeOrder. These carry the finite-
    // alpha imprint of the unequal even/odd-state norms; the post-selected
    // outcome probabilities do not.
    std::array<double, 4> premerge_probabilities{};
    double epr_success_probability = 0.0;  // from the pair-preparation stage
    RunDiagnostics diagnostics;
};

/// Full teleportation run: A1 in zeta|b> + xi|c>, A2-A4 pair from
/// prepare_epr(PsiPlus), A1 and A2 dispersively through a fresh cavity in
/// |alpha> (phi = pi), displacement by +alpha, resonant probe, e3
/// post-selection, A1/A2 enumeration, and the outcome-conditioned
/// correction on A4.
TeleportResult teleport(const TeleportConfig &config);

/// Correction Bob applies given Alice's A1/A2 detection: identity for equal
/// levels, the {b, c} swap for unequal ones. Levels must be b or c.
AtomicUnitary2x2 correction_for(int a1_level, int a2_level);

}  // namespace lambdacav

#endif
