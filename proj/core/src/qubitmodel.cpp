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

#include "lambdacav/qubitmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambdacav/protocols.hpp"

namespace lambdacav {

namespace {

// Outcome bit pairs in the canonical order bb, cc, bc, cb under the
// dictionary b -> 0, c -> 1.
constexpr std::array<std::pair<int, int>, 4> kBitOrder = {
    std::pair<int, int>{0, 0}, std::pair<int, int>{1, 1}, std::pair<int, int>{0, 1},
    std::pair<int, int>{1, 0}};

}  // namespace

QubitRegister QubitRegister::basis(int width, unsigned basis_index) {
    if (width < 1 || width > 24) throw DomainError("register width must be in [1, 24]");
    std::size_t dim = std::size_t{1} << width;
    if (basis_index >= dim) throw DomainError("basis index out of range");
    QubitRegister r;
    r.width = width;
    r.amps.assign(dim, Amp(0, 0));
    r.amps[basis_index] = Amp(1, 0);
    return r;
}

double QubitRegister::norm2() const {
    double n2 = 0.0;
    for (const Amp &a : amps) n2 += std::norm(a);
    return n2;
}

int QubitRegister::bit(std::size_t flat, int qubit) const {
    return static_cast<int>(flat >> (width - 1 - qubit)) & 1;
}

QubitRegister xor_gate(const QubitRegister &r, int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0 || a >= r.width || b >= r.width || c >= r.width) {
        throw DomainError("xor_gate qubit index out of range");
    }
    if (a == b || a == c || b == c) throw DomainError("xor_gate qubit indices must be distinct");
    std::size_t mask_a = std::size_t{1} << (r.width - 1 - a);
    std::size_t mask_b = std::size_t{1} << (r.width - 1 - b);
    std::size_t mask_c = std::size_t{1} << (r.width - 1 - c);
    QubitRegister out = r;
    for (std::size_t i = 0; i < r.amps.size(); ++i) {
        std::size_t j = (i & mask_c) != 0 ? i ^ (mask_a | mask_b) : i;
        out.amps[j] = r.amps[i];
    }
    return out;
}

QubitTeleportResult qubit_teleport_reference(Amp zeta, Amp xi) {
    double input_norm = std::norm(zeta) + std::norm(xi);
    if (std::abs(input_norm - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "input qubit not normalized: |zeta|^2 + |xi|^2 = " << input_norm;
        throw DomainError(msg.str());
    }

    // Qubits: A1 = 0, A2 = 1, A4 = 2, cavity = 3.
    QubitRegister r;
    r.width = 4;
    r.amps.assign(16, Amp(0, 0));
    for (std::size_t x1 = 0; x1 < 2; ++x1) {
        Amp a1 = x1 == 0 ? zeta : xi;
        for (std::size_t x24 = 0; x24 < 2; ++x24) {      // A2 == A4 branch
            for (std::size_t xc = 0; xc < 2; ++xc) {
                std::size_t idx = (x1 << 3) | (x24 << 2) | (x24 << 1) | xc;
                r.amps[idx] = a1 * 0.5;  // (1/sqrt2 pair) * (1/sqrt2 cavity)
            }
        }
    }
    r = xor_gate(r, 0, 1, 3);

    QubitTeleportResult out;
    for (std::size_t k = 0; k < kBitOrder.size(); ++k) {
        auto [x1, x2] = kBitOrder[k];
        double p = 0.0;
        for (std::size_t x4 = 0; x4 < 2; ++x4) {
            for (std::size_t xc = 0; xc < 2; ++xc) {
                std::size_t idx = (static_cast<std::size_t>(x1) << 3) |
                                  (static_cast<std::size_t>(x2) << 2) | (x4 << 1) | xc;
                p += std::norm(r.amps[idx]);
            }
        }
        out.premerge_probabilities[k] = p;
    }

    // Merge: project the cavity qubit onto (|0> + |1>)/sqrt(2) and drop it.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<Amp, 8> merged{};
    double merge_p = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        merged[i] = (r.amps[2 * i] + r.amps[2 * i + 1]) * inv_sqrt2;
        merge_p += std::norm(merged[i]);
    }
    out.merge_probability = merge_p;
    double renorm = 1.0 / std::sqrt(merge_p);
    for (Amp &a : merged) a *= renorm;

    for (std::size_t k = 0; k < kBitOrder.size(); ++k) {
        auto [x1, x2] = kBitOrder[k];
        QubitOutcome &rec = out.outcomes[k];
        rec.a1_bit = x1;
        rec.a2_bit = x2;
        std::size_t base = (static_cast<std::size_t>(x1) << 2) |
                           (static_cast<std::size_t>(x2) << 1);
        Amp a0 = merged[base], a1 = merged[base | 1];
        rec.probability = std::norm(a0) + std::norm(a1);
        double inv = 1.0 / std::sqrt(rec.probability);
        a0 *= inv;
        a1 *= inv;
        rec.fidelity_before_correction = std::norm(std::conj(zeta) * a0 + std::conj(xi) * a1);
        if (x1 != x2) std::swap(a0, a1);  // bit-flip correction
        rec.a4 = {a0, a1};
        rec.fidelity_to_input = std::norm(std::conj(zeta) * a0 + std::conj(xi) * a1);
    }
    return out;
}

ModelComparison compare_models(Amp zeta, Amp xi, Amp alpha, int n_max) {
    TeleportConfig cfg;
    cfg.zeta = zeta;
    cfg.xi = xi;
    cfg.alpha = alpha;
    cfg.probe_gt = probe_pulse_heuristic(alpha);
    cfg.n_max = n_max;
    cfg.mode = TeleportMode::Enumerate;
    TeleportResult physical = teleport(cfg);
    QubitTeleportResult qubit = qubit_teleport_reference(zeta, xi);

    ModelComparison out;
    out.e3_probability = physical.e3_probability;
    out.merge_probability = qubit.merge_probability;
    out.deviation_bound = 10.0 * std::exp(-2.0 * std::norm(alpha)) + 1e-9;
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
        ComparisonRow &row = out.rows[k];
        row.label = outcome_label(kOutcomeOrder[k].first, kOutcomeOrder[k].second);
        row.physical_premerge = physical.premerge_probabilities[k];
        row.qubit_premerge = qubit.premerge_probabilities[k];
        row.physical_probability = physical.outcomes[k].probability;
        row.qubit_probability = qubit.outcomes[k].probability;
        row.physical_fidelity = physical.outcomes[k].fidelity_to_input;
        row.qubit_fidelity = qubit.outcomes[k].fidelity_to_input;
        out.max_probability_deviation =
            std::max({out.max_probability_deviation,
                      std::abs(row.physical_premerge - row.qubit_premerge),
                      std::abs(row.physical_probability - row.qubit_probability)});
        out.max_fidelity_deviation = std::max(
            out.max_fidelity_deviation, std::abs(row.physical_fidelity - row.qubit_fidelity));
    }
    if (out.max_probability_deviation > out.deviation_bound) {
        std::ostringstream msg;
        msg << "model probability deviation " << out.max_probability_deviation
            << " exceeds the bound " << out.deviation_bound << " at |alpha|=" << std::abs(alpha);
        throw CheckError(msg.str());
    }
    return out;
}

}  // namespace lambdacav
