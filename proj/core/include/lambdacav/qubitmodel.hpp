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

#ifndef LAMBDACAV_QUBITMODEL_HPP
#define LAMBDACAV_QUBITMODEL_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lambdacav/fockspace.hpp"

namespace lambdacav {

/// Register of qubits with qubit 0 the most significant index bit:
/// basis state |x0 x1 .. x_{w-1}> lives at index x0*2^{w-1} + .. + x_{w-1}.
struct QubitRegister {
    int width = 0;
    std::vector<Amp> amps;

    static QubitRegister basis(int width, unsigned basis_index);

    double norm2() const;
    /// Extracts bit `qubit` of flat index `flat`.
    int bit(std::size_t flat, int qubit) const;
};

/// |A>|B>|C> -> |A xor C>|B xor C>|C> on qubits (a, b, c): flips bits a and
/// b of every basis state whose bit c is 1. Indices must be distinct and in
/// range.
QubitRegister xor_gate(const QubitRegister &r, int a, int b, int c);

/// One A1/A2 outcome of the abstract-qubit teleportation. `a4` is the
/// CORRECTED receiver qubit (amplitudes over {|0>, |1>}).
struct QubitOutcome {
    int a1_bit = 0;
    int a2_bit = 0;
    double probability = 0.0;  // conditioned on the merge succeeding
    std::array<Amp, 2> a4{Amp(0, 0), Amp(0, 0)};
    double fidelity_before_correction = 0.0;
    double fidelity_to_input = 0.0;
};

struct QubitTeleportResult {
    double merge_probability = 0.0;  // analog of the e3 detection, exactly 1/2
    std::array<QubitOutcome, 4> outcomes;  // order 00, 11, 01, 10
    // Joint A1/A2 marginals before the merge, same order — exactly 1/4 each.
    std::array<double, 4> premerge_probabilities{};
};

/// Four-qubit brute-force reference: A1 = zeta|0> + xi|1>, A2-A4 in
/// (|00> + |11>)/sqrt(2), cavity qubit in (|0> + |1>)/sqrt(2); XOR gate on
/// (A1, A2, cavity); merge = projection of the cavity qubit onto
/// (|0> + |1>)/sqrt(2); A1/A2 enumeration; bit-flip correction when the
/// detected bits differ.
QubitTeleportResult qubit_teleport_reference(Amp zeta, Amp xi);

/// One row of the cross-model report. Probabilities conditioned on the
/// merge/e3 success; premerge values are the pre-detection marginals where
/// the finite-alpha deviation actually lives.
struct ComparisonRow {
    std::string label;  // "bb", "cc", "bc", "cb"
    double physical_premerge = 0.0;
    double qubit_premerge = 0.0;
    double physical_probability = 0.0;
    double qubit_probability = 0.0;
    double physical_fidelity = 0.0;
    double qubit_fidelity = 0.0;
};

struct ModelComparison {
    std::array<ComparisonRow, 4> rows;
    double e3_probability = 0.0;     // physical model
    double merge_probability = 0.0;  // qubit model
    double max_probability_deviation = 0.0;  // over premerge and conditioned rows
    double max_fidelity_deviation = 0.0;
    double deviation_bound = 0.0;  // 10 e^{-2|alpha|^2} + 1e-9
};

/// Runs both models on the same input qubit and compares outcome
/// probabilities and corrected fidelities row by row. Throws CheckError if
/// the probability deviation exceeds the alpha-dependent bound.
ModelComparison compare_models(Amp zeta, Amp xi, Amp alpha, int n_max);

}  // namespace lambdacav

#endif
