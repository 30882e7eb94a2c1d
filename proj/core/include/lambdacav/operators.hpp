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

#ifndef LAMBDACAV_OPERATORS_HPP
#define LAMBDACAV_OPERATORS_HPP

#include <array>

#include "lambdacav/fockspace.hpp"

namespace lambdacav {

/// Series cutoff used when exponentiating the displacement generator.
inline constexpr double kDisplaceSeriesTolerance = 1e-14;

/// 2x2 unitary acting on an ordered two-level basis: the {b, c} subspace of
/// a three-level atom (upper level untouched) or the {f, e} probe basis.
struct AtomicUnitary2x2 {
    // Row-major: m[0] m[1] / m[2] m[3].
    std::array<Amp, 4> m{Amp(1, 0), Amp(0, 0), Amp(0, 0), Amp(1, 0)};

    static AtomicUnitary2x2 identity();
    /// |second><first| - |first><second| : maps |b> -> |c>, |c> -> -|b>.
    static AtomicUnitary2x2 bell_rotation();
    /// The plain {b, c} (or {f, e}) swap.
    static AtomicUnitary2x2 bc_swap();

    /// Max-abs deviation of m^dagger m from the identity.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-12) const;
};

/// Parity-projector selector: Plus keeps even Fock levels, Minus maps odd
/// levels to minus themselves (both kill the complementary-parity sector).
enum class ParitySign { Plus, Minus };

/// Multiplies the amplitude at Fock level n of the addressed cavity by
/// e^{i phi n}.
CompositeState number_phase(const CompositeState &s, std::size_t cavity_index, double phi);

/// Applies (e^{i pi a'a} +- 1) / 2 on the addressed cavity. Not
/// norm-preserving (these are the even/odd projectors up to sign).
/// Parity factors are computed exactly from the integer level, so amplitudes
/// of the killed sector become exact zeros.
CompositeState parity_project(const CompositeState &s, std::size_t cavity_index,
                              ParitySign sign);

/// Diagnostics reported by displace.
struct DisplaceDiagnostics {
    // Max-abs entry of D^dagger D - 1 over the block that excludes the top
    // 3 Fock levels (the truncated generator is exactly anti-Hermitian, so
    // this measures rounding, not truncation).
    double unitarity_defect = 0.0;
    // Top-3-level mass of the displaced state.
    double result_tail_mass = 0.0;
};

/// Applies the displacement unitary exp(beta a' - conj(beta) a), built by
/// scaling-and-squaring of the truncated generator's Taylor series.
/// Throws TruncationError if the displaced state's tail mass exceeds the
/// mode's tolerance.
CompositeState displace(const CompositeState &s, std::size_t cavity_index, Amp beta,
                        DisplaceDiagnostics *diag = nullptr);

/// Dispersive propagator of a three-level lambda atom across the cavity:
/// per Fock level n, the |a> amplitude gains -e^{i phi n} while the
/// {|b>, |c>} pair mixes through
///     |b> -> (h+)|b> + (h-)|c>,   |c> -> (h-)|b> + (h+)|c>,
/// with h+- = (e^{i phi n} +- 1)/2. At phi == pi the factors are evaluated
/// from the integer parity so the projected sectors vanish exactly.
CompositeState dispersive_lambda_evolve(const CompositeState &s, std::size_t atom_index,
                                        std::size_t cavity_index, double phi);

/// Diagnostics reported by jc_evolve.
struct JcDiagnostics {
    // Probability on |e, n_max> (the clipped half-block) before evolution.
    double clipped_probability = 0.0;
    // True if the top Fock level held more than the mode's tail tolerance.
    bool top_level_warning = false;
};

/// Resonant Jaynes-Cummings propagator on a two-level probe and a cavity:
/// within each {|f,n>, |e,n-1>} block,
///     |f,n> -> cos(gt sqrt(n)) |f,n> - i sin(gt sqrt(n)) |e,n-1>,
///     |e,n-1> -> cos(gt sqrt(n)) |e,n-1> - i sin(gt sqrt(n)) |f,n>,
/// and |f,0> is invariant. The half-block coupling |e,n_max> out of the
/// truncated space is dropped (|e,n_max> kept unchanged, preserving
/// unitarity); its probability is reported in the diagnostics.
CompositeState jc_evolve(const CompositeState &s, std::size_t atom_index,
                         std::size_t cavity_index, double gt, JcDiagnostics *diag = nullptr);

/// Applies `u` to the two working levels of the addressed atom: the {b, c}
/// subspace of an Atom3 (|a> untouched) or the full {f, e} basis of an
/// Atom2. Throws DomainError if `u` is not unitary within 1e-12.
CompositeState apply_atomic_unitary(const CompositeState &s, std::size_t atom_index,
                                    const AtomicUnitary2x2 &u);

}  // namespace lambdacav

#endif
