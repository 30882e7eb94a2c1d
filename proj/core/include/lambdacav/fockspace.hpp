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

#ifndef LAMBDACAV_FOCKSPACE_HPP
#define LAMBDACAV_FOCKSPACE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lambdacav/errors.hpp"

namespace lambdacav {

/// Complex amplitude type used throughout the library.
using Amp = std::complex<double>;

/// Hard cap on the joint amplitude-vector length (2^24 entries, 256 MiB).
inline constexpr std::size_t kMaxAmps = std::size_t{1} << 24;

/// Hard cap on a single cavity cutoff.
inline constexpr int kMaxNmax = 1 << 20;

/// Default bound on the probability mass allowed in the top 3 Fock levels.
inline constexpr double kDefaultTailTolerance = 1e-9;

/// Basis indices of the three-level atom: one upper level |a> and two
/// degenerate lower levels |b>, |c>.
inline constexpr int kLevelA = 0;
inline constexpr int kLevelB = 1;
inline constexpr int kLevelC = 2;

/// Basis indices of the two-level probe atom: lower |f>, upper |e>.
inline constexpr int kLevelF = 0;
inline constexpr int kLevelE = 1;

/// Truncated single-mode Fock space: levels |0> .. |n_max>.
struct CavityMode {
    int n_max = 1;
    double tail_tolerance = kDefaultTailTolerance;
};

/// Descriptor of one tensor factor of a composite state.
struct SubsystemKind {
    enum class Type { Atom3, Atom2, Cavity };

    Type type = Type::Atom3;
    int dim = 3;
    // Meaningful for cavities only; atoms keep the default.
    double tail_tolerance = kDefaultTailTolerance;

    static SubsystemKind atom3() { return {Type::Atom3, 3, kDefaultTailTolerance}; }
    static SubsystemKind atom2() { return {Type::Atom2, 2, kDefaultTailTolerance}; }
    static SubsystemKind cavity(const CavityMode &mode);

    bool is_atom() const { return type != Type::Cavity; }
    bool same_kind(const SubsystemKind &other) const {
        return type == other.type && dim == other.dim;
    }
    std::string name() const;
};

/// Pure state of an ordered list of subsystems.
///
/// Amplitudes are stored flat in row-major order with the LAST subsystem
/// varying fastest: for subsystems of dimensions (d0, .., dk) the basis
/// state |i0, .., ik> lives at index ((i0*d1 + i1)*d2 + ..) + ik.
struct CompositeState {
    std::vector<SubsystemKind> subsystems;
    std::vector<Amp> amps;

    std::size_t dim() const { return amps.size(); }

    /// Stride of subsystem `i`: how far the flat index moves when that
    /// subsystem's basis label increases by one.
    std::size_t stride(std::size_t i) const;

    /// Basis label of subsystem `i` within flat index `flat`.
    int digit(std::size_t flat, std::size_t i) const;

    double norm2() const;
};

/// Diagnostics reported by coherent_state.
struct CoherentDiagnostics {
    double discarded_mass = 0.0;  // probability lost to the cutoff before renormalization
    double renorm_factor = 1.0;   // amplitudes were multiplied by this factor
};

/// |n> in the given mode. Throws DomainError if n is out of range.
CompositeState fock_state(int n, const CavityMode &mode);

/// Truncated, renormalized coherent state |alpha>.
///
/// Amplitudes alpha^n e^{-|alpha|^2/2} / sqrt(n!) are built by the stable
/// iteration c_{n+1} = c_n * alpha / sqrt(n+1). If the discarded mass
/// beyond n_max exceeds the mode's tail tolerance, throws TruncationError
/// carrying the smallest sufficient n_max.
CompositeState coherent_state(Amp alpha, const CavityMode &mode,
                              CoherentDiagnostics *diag = nullptr);

/// Basis state of a three-level atom.
CompositeState atom3_state(int level);

/// zeta|b> + xi|c> (amplitudes used as given; callers wanting a normalized
/// qubit must normalize themselves).
CompositeState atom3_superposition(Amp zeta, Amp xi);

/// Basis state of a two-level probe atom.
CompositeState atom2_state(int level);

/// Tensor product; subsystem lists concatenate in order (a first).
/// Throws CapacityError if the joint dimension exceeds kMaxAmps.
CompositeState tensor(const CompositeState &a, const CompositeState &b);

/// <a|b>. Shapes must match exactly.
Amp inner_product(const CompositeState &a, const CompositeState &b);

/// |<a|b>|^2 for normalized a, b (both norms checked to within 1e-8).
double fidelity(const CompositeState &a, const CompositeState &b);

/// a + b (same shape).
CompositeState add(const CompositeState &a, const CompositeState &b);

/// z * a.
CompositeState scaled(const CompositeState &a, Amp z);

/// a / |a|. Throws DomainError on (numerically) zero states.
CompositeState normalized(const CompositeState &a);

/// Probability distribution over the basis labels of subsystem `index`.
std::vector<double> marginal_distribution(const CompositeState &s, std::size_t index);

/// Probability mass in the top 3 Fock levels of the cavity at `index`.
/// (For n_max < 2 the sum covers what levels exist.)
double tail_mass(const CompositeState &s, std::size_t index);

/// Result of extracting one tensor factor from a (nearly) product state.
struct FactorResult {
    CompositeState factor;  // normalized pure state of the kept subsystems
    double residual = 0.0;  // 1 - dominant eigenvalue of the reduced density matrix
};

/// Extract the pure state of `keep` (given in output order) assuming the
/// full state approximately factorizes across the keep/rest cut. The global
/// phase is fixed by making the largest-magnitude amplitude real positive.
FactorResult factor_out(const CompositeState &s, const std::vector<std::size_t> &keep);

/// Cavity cutoff heuristic that keeps the tail beyond n_max far below the
/// default tolerance for every field amplitude reachable from |alpha>
/// during the protocols (which displace up to 2*alpha).
int default_n_max(Amp alpha);

/// Cavity-QED parameter set for the dispersive interaction. The phase
/// imprinted per photon is phi = 2 g^2 tau / delta.
struct PhysicalParams {
    double g = 0.0;        // atom-field coupling (rad/s)
    double tau = 0.0;      // interaction time (s)
    double delta = 0.0;    // detuning omega_a - omega_b - omega (rad/s), nonzero
    double omega_a = 0.0;  // upper-level frequency (rad/s)
    double omega_b = 0.0;  // lower-level frequency (rad/s)
    double omega_c = 0.0;  // lower-level frequency (rad/s), degenerate with omega_b
    double omega = 0.0;    // cavity-field frequency (rad/s)

    /// Throws DomainError unless delta != 0 and both lower levels sit at
    /// delta below the |a> <-> field resonance (checked to 1e-9 relative).
    void validate() const;

    double phi() const { return 2.0 * g * g * tau / delta; }

    /// Consistent parameter set whose phi() equals the requested phase.
    static PhysicalParams for_phase(double phi_target);
};

}  // namespace lambdacav

#endif
