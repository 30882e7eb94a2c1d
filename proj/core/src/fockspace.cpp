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

#include "lambdacav/fockspace.hpp"

#include <algorithm>
#include <cmath>
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

void check_subsystem_index(const CompositeState &s, std::size_t i) {
    if (i >= s.subsystems.size()) {
        std::ostringstream msg;
        msg << "subsystem index " << i << " out of range (state has " << s.subsystems.size()
            << " subsystems)";
        throw ShapeError(msg.str());
    }
}

void check_same_shape(const CompositeState &a, const CompositeState &b) {
    bool ok = a.subsystems.size() == b.subsystems.size();
    for (std::size_t i = 0; ok && i < a.subsystems.size(); ++i) {
        ok = a.subsystems[i].same_kind(b.subsystems[i]);
    }
    if (!ok) throw ShapeError("subsystem lists do not match");
}

void check_normalized(const CompositeState &s, const char *which) {
    if (std::abs(s.norm2() - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << which << " state is not normalized (squared norm " << s.norm2() << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

SubsystemKind SubsystemKind::cavity(const CavityMode &mode) {
    if (mode.n_max < 1 || mode.n_max > kMaxNmax) {
        std::ostringstream msg;
        msg << "cavity n_max must be in [1, " << kMaxNmax << "], got " << mode.n_max;
        throw DomainError(msg.str());
    }
    return {Type::Cavity, mode.n_max + 1, mode.tail_tolerance};
}

std::string SubsystemKind::name() const {
    switch (type) {
        case Type::Atom3:
            return "atom3";
        case Type::Atom2:
            return "atom2";
        case Type::Cavity:
            return "cavity";
    }
    return "?";
}

std::size_t CompositeState::stride(std::size_t i) const {
    std::size_t st = 1;
    for (std::size_t k = subsystems.size(); k-- > i + 1;) {
        st *= static_cast<std::size_t>(subsystems[k].dim);
    }
    return st;
}

int CompositeState::digit(std::size_t flat, std::size_t i) const {
    return static_cast<int>(flat / stride(i) % static_cast<std::size_t>(subsystems[i].dim));
}

double CompositeState::norm2() const {
    double n2 = 0.0;
    for (const Amp &a : amps) n2 += std::norm(a);
    return n2;
}

CompositeState fock_state(int n, const CavityMode &mode) {
    SubsystemKind kind = SubsystemKind::cavity(mode);
    if (n < 0 || n > mode.n_max) {
        std::ostringstream msg;
        msg << "Fock level " << n << " out of range [0, " << mode.n_max << "]";
        throw DomainError(msg.str());
    }
    CompositeState s{{kind}, std::vector<Amp>(static_cast<std::size_t>(mode.n_max) + 1)};
    s.amps[static_cast<std::size_t>(n)] = Amp(1, 0);
    return s;
}

CompositeState coherent_state(Amp alpha, const CavityMode &mode, CoherentDiagnostics *diag) {
    SubsystemKind kind = SubsystemKind::cavity(mode);
    std::size_t dim = static_cast<std::size_t>(mode.n_max) + 1;
    std::vector<Amp> amps(dim);
    // c_0 = e^{-|alpha|^2 / 2}, c_{n+1} = c_n * alpha / sqrt(n+1).
    Amp c = std::exp(Amp(-0.5 * std::norm(alpha), 0.0));
    double kept = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        amps[n] = c;
        kept += std::norm(c);
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    double discarded = std::max(0.0, 1.0 - kept);
    if (discarded > mode.tail_tolerance) {
        // Find the smallest cutoff that keeps the analytic tail below the
        // tolerance, continuing the same recurrence.
        int required = mode.n_max;
        double cum = kept;
        double lost = 1.0 - cum;
        while (lost > mode.tail_tolerance && required < kMaxNmax) {
            ++required;
            cum += std::norm(c);
            c *= alpha / std::sqrt(static_cast<double>(required + 1));
            lost = 1.0 - cum;
        }
        std::ostringstream msg;
        msg << "coherent state |alpha|=" << std::abs(alpha) << " loses mass " << discarded
            << " beyond n_max=" << mode.n_max << " (tolerance " << mode.tail_tolerance
            << "); n_max >= " << required << " required";
        throw TruncationError(msg.str(), required);
    }
    double renorm = 1.0 / std::sqrt(kept);
    for (Amp &a : amps) a *= renorm;
    if (diag != nullptr) {
        diag->discarded_mass = discarded;
        diag->renorm_factor = renorm;
    }
    check_finite(amps);
    return CompositeState{{kind}, std::move(amps)};
}

CompositeState atom3_state(int level) {
    if (level < 0 || level > 2) throw DomainError("three-level atom level must be 0, 1, or 2");
    CompositeState s{{SubsystemKind::atom3()}, std::vector<Amp>(3)};
    s.amps[static_cast<std::size_t>(level)] = Amp(1, 0);
    return s;
}

CompositeState atom3_superposition(Amp zeta, Amp xi) {
    CompositeState s{{SubsystemKind::atom3()}, std::vector<Amp>(3)};
    s.amps[kLevelB] = zeta;
    s.amps[kLevelC] = xi;
    check_finite(s.amps);
    return s;
}

CompositeState atom2_state(int level) {
    if (level < 0 || level > 1) throw DomainError("two-level atom level must be 0 or 1");
    CompositeState s{{SubsystemKind::atom2()}, std::vector<Amp>(2)};
    s.amps[static_cast<std::size_t>(level)] = Amp(1, 0);
    return s;
}

CompositeState tensor(const CompositeState &a, const CompositeState &b) {
    if (b.dim() != 0 && a.dim() > kMaxAmps / b.dim()) {
        std::ostringstream msg;
        msg << "tensor product dimension " << a.dim() << " * " << b.dim() << " exceeds the cap "
            << kMaxAmps;
        throw CapacityError(msg.str());
    }
    CompositeState out;
    out.subsystems = a.subsystems;
    out.subsystems.insert(out.subsystems.end(), b.subsystems.begin(), b.subsystems.end());
    out.amps.resize(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out.amps[i * b.dim() + j] = a.amps[i] * b.amps[j];
        }
    }
    return out;
}

Amp inner_product(const CompositeState &a, const CompositeState &b) {
    check_same_shape(a, b);
    Amp acc(0, 0);
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

double fidelity(const CompositeState &a, const CompositeState &b) {
    check_same_shape(a, b);
    check_normalized(a, "first");
    check_normalized(b, "second");
    return std::norm(inner_product(a, b));
}

CompositeState add(const CompositeState &a, const CompositeState &b) {
    check_same_shape(a, b);
    CompositeState out = a;
    for (std::size_t i = 0; i < out.dim(); ++i) out.amps[i] += b.amps[i];
    return out;
}

CompositeState scaled(const CompositeState &a, Amp z) {
    CompositeState out = a;
    for (Amp &amp : out.amps) amp *= z;
    check_finite(out.amps);
    return out;
}

CompositeState normalized(const CompositeState &a) {
    double n2 = a.norm2();
    if (n2 < 1e-300) throw DomainError("cannot normalize a zero state");
    return scaled(a, Amp(1.0 / std::sqrt(n2), 0.0));
}

std::vector<double> marginal_distribution(const CompositeState &s, std::size_t index) {
    check_subsystem_index(s, index);
    std::size_t d = static_cast<std::size_t>(s.subsystems[index].dim);
    std::size_t st = s.stride(index);
    std::vector<double> p(d, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        p[i / st % d] += std::norm(s.amps[i]);
    }
    return p;
}

double tail_mass(const CompositeState &s, std::size_t index) {
    check_subsystem_index(s, index);
    if (s.subsystems[index].type != SubsystemKind::Type::Cavity) {
        throw ShapeError("tail_mass requires a cavity subsystem");
    }
    std::vector<double> p = marginal_distribution(s, index);
    double mass = 0.0;
    std::size_t take = std::min<std::size_t>(3, p.size());
    for (std::size_t k = 0; k < take; ++k) mass += p[p.size() - 1 - k];
    return mass;
}

FactorResult factor_out(const CompositeState &s, const std::vector<std::size_t> &keep) {
    if (keep.empty()) throw ShapeError("factor_out needs at least one subsystem to keep");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        check_subsystem_index(s, keep[i]);
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
            if (keep[i] == keep[j]) throw ShapeError("factor_out indices must be distinct");
        }
    }
    CompositeState norm_s = normalized(s);

    // Reshape into M[k][r]: k runs over the kept subsystems in `keep` order,
    // r over everything else in subsystem order.
    std::size_t kdim = 1;
    for (std::size_t i : keep) kdim *= static_cast<std::size_t>(s.subsystems[i].dim);
    std::size_t rdim = s.dim() / kdim;

    std::vector<std::size_t> kpos(s.subsystems.size(), SIZE_MAX);
    for (std::size_t i = 0; i < keep.size(); ++i) kpos[keep[i]] = i;
    std::vector<std::size_t> kstride(keep.size(), 1);
    for (std::size_t i = keep.size(); i-- > 1;) {
        kstride[i - 1] = kstride[i] * static_cast<std::size_t>(s.subsystems[keep[i]].dim);
    }

    std::vector<Amp> m(kdim * rdim);
    for (std::size_t flat = 0; flat < s.dim(); ++flat) {
        std::size_t k = 0, r = 0;
        for (std::size_t i = 0; i < s.subsystems.size(); ++i) {
            std::size_t dig = static_cast<std::size_t>(norm_s.digit(flat, i));
            if (kpos[i] != SIZE_MAX) {
                k += dig * kstride[kpos[i]];
            } else {
                r = r * static_cast<std::size_t>(s.subsystems[i].dim) + dig;
            }
        }
        m[k * rdim + r] = norm_s.amps[flat];
    }

    // Reduced density matrix of the kept part.
    std::vector<Amp> rho(kdim * kdim);
    for (std::size_t k1 = 0; k1 < kdim; ++k1) {
        for (std::size_t k2 = 0; k2 < kdim; ++k2) {
            Amp acc(0, 0);
            for (std::size_t r = 0; r < rdim; ++r) {
                acc += m[k1 * rdim + r] * std::conj(m[k2 * rdim + r]);
            }
            rho[k1 * kdim + k2] = acc;
        }
    }

    // Power iteration from the largest diagonal entry.
    std::size_t start = 0;
    for (std::size_t k = 1; k < kdim; ++k) {
        if (rho[k * kdim + k].real() > rho[start * kdim + start].real()) start = k;
    }
    std::vector<Amp> v(kdim), w(kdim);
    v[start] = Amp(1, 0);
    double lambda = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        for (std::size_t k1 = 0; k1 < kdim; ++k1) {
            Amp acc(0, 0);
            for (std::size_t k2 = 0; k2 < kdim; ++k2) acc += rho[k1 * kdim + k2] * v[k2];
            w[k1] = acc;
        }
        double wn = 0.0;
        for (const Amp &a : w) wn += std::norm(a);
        wn = std::sqrt(wn);
        if (wn < 1e-300) break;
        double diff = 0.0;
        for (std::size_t k = 0; k < kdim; ++k) {
            Amp nw = w[k] / wn;
            diff = std::max(diff, std::abs(nw - v[k]));
            v[k] = nw;
        }
        lambda = wn;
        if (diff < 1e-15) break;
    }

    // Fix the global phase: largest-magnitude component real positive.
    std::size_t big = 0;
    for (std::size_t k = 1; k < kdim; ++k) {
        if (std::abs(v[k]) > std::abs(v[big])) big = k;
    }
    if (std::abs(v[big]) > 0.0) {
        Amp phase = std::conj(v[big]) / std::abs(v[big]);
        for (Amp &a : v) a *= phase;
    }

    FactorResult out;
    out.factor.subsystems.reserve(keep.size());
    for (std::size_t i : keep) out.factor.subsystems.push_back(s.subsystems[i]);
    out.factor.amps = std::move(v);
    out.residual = std::max(0.0, 1.0 - lambda);
    check_finite(out.factor.amps);
    return out;
}

int default_n_max(Amp alpha) {
    double a2 = 2.0 * std::abs(alpha);
    return static_cast<int>(std::ceil(a2 * a2 + 6.0 * a2 + 10.0));
}

void PhysicalParams::validate() const {
    if (delta == 0.0) throw DomainError("detuning delta must be nonzero");
    double scale = std::max({std::abs(omega_a), std::abs(omega_b), std::abs(omega_c),
                             std::abs(omega), std::abs(delta), 1.0});
    if (std::abs(omega_a - omega_b - omega - delta) > 1e-9 * scale ||
        std::abs(omega_a - omega_c - omega - delta) > 1e-9 * scale) {
        throw DomainError(
            "level frequencies inconsistent: both lower levels must sit at delta below the "
            "upper-level/field resonance");
    }
}

PhysicalParams PhysicalParams::for_phase(double phi_target) {
    PhysicalParams p;
    p.g = 1.0;
    p.delta = 2.0;
    p.tau = phi_target;  // phi = 2 g^2 tau / delta = tau
    p.omega = 100.0;
    p.omega_b = 0.0;
    p.omega_c = 0.0;
    p.omega_a = p.omega + p.delta;
    p.validate();
    return p;
}

}  // namespace lambdacav
