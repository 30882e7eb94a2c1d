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

#include "lambdacav/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lambdacav {

namespace {

void check_finite(const std::vector<Amp> &amps) {
    for (const Amp &a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DomainError("amplitude vector contains a non-finite value");
        }
    }
}

const SubsystemKind &expect_kind(const CompositeState &s, std::size_t index,
                                 SubsystemKind::Type type, const char *what) {
    if (index >= s.subsystems.size()) {
        std::ostringstream msg;
        msg << what << " index " << index << " out of range";
        throw ShapeError(msg.str());
    }
    const SubsystemKind &kind = s.subsystems[index];
    if (kind.type != type) {
        std::ostringstream msg;
        msg << what << " index " << index << " addresses a " << kind.name() << " subsystem";
        throw ShapeError(msg.str());
    }
    return kind;
}

// Flat offsets of all basis states whose digits at the `fixed` subsystems
// are zero; adding digit*stride for each fixed subsystem reaches every
// basis state exactly once.
std::vector<std::size_t> complement_bases(const CompositeState &s,
                                          std::initializer_list<std::size_t> fixed) {
    std::vector<std::size_t> dims, strides;
    for (std::size_t i = 0; i < s.subsystems.size(); ++i) {
        if (std::find(fixed.begin(), fixed.end(), i) == fixed.end()) {
            dims.push_back(static_cast<std::size_t>(s.subsystems[i].dim));
            strides.push_back(s.stride(i));
        }
    }
    std::vector<std::size_t> bases{0};
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::vector<std::size_t> next;
        next.reserve(bases.size() * dims[k]);
        for (std::size_t b : bases) {
            for (std::size_t d = 0; d < dims[k]; ++d) next.push_back(b + d * strides[k]);
        }
        bases = std::move(next);
    }
    return bases;
}

bool is_exact_pi(double phi) {
    return phi == std::numbers::pi || phi == -std::numbers::pi;
}

// e^{i phi n}; exact +-1 when phi is the double closest to pi.
Amp phase_factor(double phi, int n, bool exact_pi) {
    if (exact_pi) return Amp(n % 2 == 0 ? 1.0 : -1.0, 0.0);
    return std::polar(1.0, phi * static_cast<double>(n));
}

std::vector<Amp> matmul(const std::vector<Amp> &a, const std::vector<Amp> &b, std::size_t n) {
    std::vector<Amp> c(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Amp aik = a[i * n + k];
            if (aik == Amp(0, 0)) continue;
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    }
    return c;
}

// exp(beta a' - conj(beta) a) on levels 0..dim-1 by scaling-and-squaring of
// the Taylor series. The truncated generator is exactly anti-Hermitian, so
// the result is unitary up to rounding; *defect reports the max-abs entry
// of D'D - 1 over the block that excludes the top 3 levels.
std::vector<Amp> displacement_matrix(std::size_t dim, Amp beta, double *defect) {
    std::vector<Amp> gen(dim * dim);
    double norm1 = 0.0;
    for (std::size_t n = 0; n + 1 < dim; ++n) {
        double root = std::sqrt(static_cast<double>(n + 1));
        gen[(n + 1) * dim + n] = beta * root;          // a' entry
        gen[n * dim + (n + 1)] = -std::conj(beta) * root;  // -a entry
        double col = std::abs(beta) * (root + std::sqrt(static_cast<double>(n)));
        norm1 = std::max(norm1, col);
    }
    int squarings = 0;
    if (norm1 > 1.0) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1)));
        double scale = std::ldexp(1.0, -squarings);
        for (Amp &g : gen) g *= scale;
    }

    std::vector<Amp> result(dim * dim), term(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) result[i * dim + i] = term[i * dim + i] = Amp(1, 0);
    for (int k = 1; k <= 120; ++k) {
        term = matmul(term, gen, dim);
        double inv = 1.0 / static_cast<double>(k);
        double biggest = 0.0;
        for (std::size_t i = 0; i < term.size(); ++i) {
            term[i] *= inv;
            biggest = std::max(biggest, std::abs(term[i]));
            result[i] += term[i];
        }
        if (biggest < kDisplaceSeriesTolerance) break;
    }
    for (int k = 0; k < squarings; ++k) result = matmul(result, result, dim);

    if (defect != nullptr) {
        std::size_t keep = dim > 3 ? dim - 3 : 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < keep; ++i) {
            for (std::size_t j = 0; j < keep; ++j) {
                Amp acc(0, 0);
                for (std::size_t k = 0; k < dim; ++k) {
                    acc += std::conj(result[k * dim + i]) * result[k * dim + j];
                }
                if (i == j) acc -= Amp(1, 0);
                worst = std::max(worst, std::abs(acc));
            }
        }
        *defect = worst;
    }
    return result;
}

}  // namespace

AtomicUnitary2x2 AtomicUnitary2x2::identity() { return {}; }

AtomicUnitary2x2 AtomicUnitary2x2::bell_rotation() {
    AtomicUnitary2x2 u;
    u.m = {Amp(0, 0), Amp(-1, 0), Amp(1, 0), Amp(0, 0)};
    return u;
}

AtomicUnitary2x2 AtomicUnitary2x2::bc_swap() {
    AtomicUnitary2x2 u;
    u.m = {Amp(0, 0), Amp(1, 0), Amp(1, 0), Amp(0, 0)};
    return u;
}

double AtomicUnitary2x2::unitarity_defect() const {
    // m'm - 1, max-abs over the four entries.
    Amp d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2] - Amp(1, 0);
    Amp d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    Amp d10 = std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
    Amp d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3] - Amp(1, 0);
    return std::max({std::abs(d00), std::abs(d01), std::abs(d10), std::abs(d11)});
}

bool AtomicUnitary2x2::is_unitary(double tol) const { return unitarity_defect() <= tol; }

CompositeState number_phase(const CompositeState &s, std::size_t cavity_index, double phi) {
    const SubsystemKind &kind =
        expect_kind(s, cavity_index, SubsystemKind::Type::Cavity, "cavity");
    std::size_t d = static_cast<std::size_t>(kind.dim);
    std::size_t st = s.stride(cavity_index);
    bool exact_pi = is_exact_pi(phi);
    std::vector<Amp> factor(d);
    for (std::size_t n = 0; n < d; ++n) factor[n] = phase_factor(phi, static_cast<int>(n), exact_pi);
    CompositeState out = s;
    for (std::size_t i = 0; i < out.dim(); ++i) out.amps[i] *= factor[i / st % d];
    check_finite(out.amps);
    return out;
}

CompositeState parity_project(const CompositeState &s, std::size_t cavity_index,
                              ParitySign sign) {
    const SubsystemKind &kind =
        expect_kind(s, cavity_index, SubsystemKind::Type::Cavity, "cavity");
    std::size_t d = static_cast<std::size_t>(kind.dim);
    std::size_t st = s.stride(cavity_index);
    // (e^{i pi n} +- 1)/2 evaluated from the integer parity: exact 0, 1, -1.
    std::vector<double> factor(d);
    for (std::size_t n = 0; n < d; ++n) {
        bool even = n % 2 == 0;
        factor[n] = sign == ParitySign::Plus ? (even ? 1.0 : 0.0) : (even ? 0.0 : -1.0);
    }
    CompositeState out = s;
    for (std::size_t i = 0; i < out.dim(); ++i) out.amps[i] *= factor[i / st % d];
    return out;
}

CompositeState displace(const CompositeState &s, std::size_t cavity_index, Amp beta,
                        DisplaceDiagnostics *diag) {
    const SubsystemKind &kind =
        expect_kind(s, cavity_index, SubsystemKind::Type::Cavity, "cavity");
    std::size_t d = static_cast<std::size_t>(kind.dim);
    std::size_t st = s.stride(cavity_index);
    double defect = 0.0;
    std::vector<Amp> mat = displacement_matrix(d, beta, &defect);

    CompositeState out = s;
    std::vector<Amp> x(d), y(d);
    for (std::size_t base : complement_bases(s, {cavity_index})) {
        for (std::size_t n = 0; n < d; ++n) x[n] = s.amps[base + n * st];
        for (std::size_t i = 0; i < d; ++i) {
            Amp acc(0, 0);
            for (std::size_t j = 0; j < d; ++j) acc += mat[i * d + j] * x[j];
            y[i] = acc;
        }
        for (std::size_t n = 0; n < d; ++n) out.amps[base + n * st] = y[n];
    }

    double norm2 = out.norm2();
    double tail = tail_mass(out, cavity_index);
    double relative_tail = norm2 > 0.0 ? tail / norm2 : 0.0;
    if (diag != nullptr) {
        diag->unitarity_defect = defect;
        diag->result_tail_mass = tail;
    }
    if (relative_tail > kind.tail_tolerance) {
        // Suggest a cutoff from the displaced photon-number mean; the true
        // distribution beyond n_max is invisible from inside the truncation.
        std::vector<double> p = marginal_distribution(out, cavity_index);
        double mean = 0.0;
        for (std::size_t n = 0; n < p.size(); ++n) mean += static_cast<double>(n) * p[n];
        mean /= norm2 > 0.0 ? norm2 : 1.0;
        int required = static_cast<int>(std::ceil(mean + 6.0 * std::sqrt(mean) + 10.0));
        std::ostringstream msg;
        msg << "displacement by |beta|=" << std::abs(beta) << " leaves tail mass "
            << relative_tail << " in the top 3 of " << d << " levels (tolerance "
            << kind.tail_tolerance << "); try n_max >= " << required;
        throw TruncationError(msg.str(), required);
    }
    check_finite(out.amps);
    return out;
}

CompositeState dispersive_lambda_evolve(const CompositeState &s, std::size_t atom_index,
                                        std::size_t cavity_index, double phi) {
    expect_kind(s, atom_index, SubsystemKind::Type::Atom3, "atom");
    const SubsystemKind &cavity =
        expect_kind(s, cavity_index, SubsystemKind::Type::Cavity, "cavity");
    if (atom_index == cavity_index) throw ShapeError("atom and cavity indices must differ");

    std::size_t d = static_cast<std::size_t>(cavity.dim);
    std::size_t sc = s.stride(cavity_index);
    std::size_t sa = s.stride(atom_index);
    bool exact_pi = is_exact_pi(phi);

    CompositeState out = s;
    for (std::size_t base : complement_bases(s, {atom_index, cavity_index})) {
        for (std::size_t n = 0; n < d; ++n) {
            Amp f = phase_factor(phi, static_cast<int>(n), exact_pi);
            Amp hp = 0.5 * (f + Amp(1, 0));
            Amp hm = 0.5 * (f - Amp(1, 0));
            std::size_t ia = base + static_cast<std::size_t>(kLevelA) * sa + n * sc;
            std::size_t ib = base + static_cast<std::size_t>(kLevelB) * sa + n * sc;
            std::size_t ic = base + static_cast<std::size_t>(kLevelC) * sa + n * sc;
            Amp b = s.amps[ib], c = s.amps[ic];
            out.amps[ia] = -f * s.amps[ia];
            out.amps[ib] = hp * b + hm * c;
            out.amps[ic] = hm * b + hp * c;
        }
    }
    check_finite(out.amps);
    return out;
}

CompositeState jc_evolve(const CompositeState &s, std::size_t atom_index,
                         std::size_t cavity_index, double gt, JcDiagnostics *diag) {
    expect_kind(s, atom_index, SubsystemKind::Type::Atom2, "atom");
    const SubsystemKind &cavity =
        expect_kind(s, cavity_index, SubsystemKind::Type::Cavity, "cavity");
    if (atom_index == cavity_index) throw ShapeError("atom and cavity indices must differ");

    std::size_t d = static_cast<std::size_t>(cavity.dim);
    std::size_t sc = s.stride(cavity_index);
    std::size_t sa = s.stride(atom_index);

    double norm2 = s.norm2();
    double top_mass = marginal_distribution(s, cavity_index)[d - 1];
    double clipped = 0.0;

    CompositeState out = s;
    for (std::size_t base : complement_bases(s, {atom_index, cavity_index})) {
        // |e, n_max> has no partner level inside the truncation; it is kept
        // unchanged (exactly unitary) and its probability reported.
        clipped += std::norm(
            s.amps[base + static_cast<std::size_t>(kLevelE) * sa + (d - 1) * sc]);
        for (std::size_t n = 1; n < d; ++n) {
            double angle = gt * std::sqrt(static_cast<double>(n));
            double cs = std::cos(angle), sn = std::sin(angle);
            std::size_t ifn = base + static_cast<std::size_t>(kLevelF) * sa + n * sc;
            std::size_t ien1 = base + static_cast<std::size_t>(kLevelE) * sa + (n - 1) * sc;
            Amp fn = s.amps[ifn], en1 = s.amps[ien1];
            out.amps[ifn] = cs * fn - Amp(0, 1) * sn * en1;
            out.amps[ien1] = cs * en1 - Amp(0, 1) * sn * fn;
        }
    }
    if (diag != nullptr) {
        diag->clipped_probability = clipped;
        diag->top_level_warning =
            norm2 > 0.0 && top_mass / norm2 > cavity.tail_tolerance;
    }
    check_finite(out.amps);
    return out;
}

CompositeState apply_atomic_unitary(const CompositeState &s, std::size_t atom_index,
                                    const AtomicUnitary2x2 &u) {
    if (atom_index >= s.subsystems.size()) throw ShapeError("atom index out of range");
    const SubsystemKind &kind = s.subsystems[atom_index];
    if (!kind.is_atom()) throw ShapeError("apply_atomic_unitary requires an atom subsystem");
    if (!u.is_unitary(1e-12)) {
        std::ostringstream msg;
        msg << "matrix is not unitary (defect " << u.unitarity_defect() << ")";
        throw DomainError(msg.str());
    }
    // Atom3: rotate the {b, c} subspace, |a> untouched. Atom2: full basis.
    std::size_t l0 = kind.type == SubsystemKind::Type::Atom3
                         ? static_cast<std::size_t>(kLevelB)
                         : static_cast<std::size_t>(kLevelF);
    std::size_t l1 = kind.type == SubsystemKind::Type::Atom3
                         ? static_cast<std::size_t>(kLevelC)
                         : static_cast<std::size_t>(kLevelE);
    std::size_t sa = s.stride(atom_index);

    CompositeState out = s;
    for (std::size_t base : complement_bases(s, {atom_index})) {
        std::size_t i0 = base + l0 * sa, i1 = base + l1 * sa;
        Amp x0 = s.amps[i0], x1 = s.amps[i1];
        out.amps[i0] = u.m[0] * x0 + u.m[1] * x1;
        out.amps[i1] = u.m[2] * x0 + u.m[3] * x1;
    }
    check_finite(out.amps);
    return out;
}

}  // namespace lambdacav
