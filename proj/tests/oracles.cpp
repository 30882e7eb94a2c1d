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

#include "oracles.hpp"

#include <cmath>
#include <cstddef>

namespace oracles {

namespace {

// Upper summation limit that leaves a tail far below long-double epsilon.
int series_top(long double mean) {
    return static_cast<int>(mean + 60.0L * std::sqrt(mean) + 80.0L);
}

}  // namespace

long double poisson_pmf(long double mean, int n) {
    if (n < 0) return 0.0L;
    if (mean <= 0.0L) return n == 0 ? 1.0L : 0.0L;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0L));
}

long double poisson_tail_above(long double mean, int n_max) {
    long double tail = 0.0L;
    // Small-to-large summation: the far tail terms are the smallest.
    for (int n = series_top(mean); n > n_max; --n) tail += poisson_pmf(mean, n);
    return tail;
}

int minimal_n_max(long double mean, long double tol) {
    int top = series_top(mean);
    long double tail = 0.0L;
    // Walk down from the top accumulating the suffix mass; the first cutoff
    // (from above) whose tail exceeds tol means the previous one was minimal.
    for (int k = top; k >= 0; --k) {
        tail += poisson_pmf(mean, k + 1);
        if (tail > tol) return k + 1;
    }
    return 0;
}

double probe_click_probability(double alpha_abs, double gt) {
    long double mean = 4.0L * static_cast<long double>(alpha_abs) * alpha_abs;
    long double acc = 0.0L;
    for (int n = series_top(mean); n >= 1; --n) {
        long double s = std::sin(gt * std::sqrt(static_cast<long double>(n)));
        acc += poisson_pmf(mean, n) * s * s;
    }
    return static_cast<double>(0.5L * acc);
}

std::array<double, 4> premerge_marginals(std::complex<double> zeta, std::complex<double> xi,
                                         double alpha_abs) {
    double q = std::exp(-2.0 * alpha_abs * alpha_abs);
    double delta = std::norm(zeta) - std::norm(xi);
    double hi = 0.25 * (1.0 + q * delta);
    double lo = 0.25 * (1.0 - q * delta);
    return {hi, lo, hi, lo};  // bb, cc, bc, cb
}

double swapped_overlap(std::complex<double> zeta, std::complex<double> xi) {
    double re = 2.0 * (std::conj(zeta) * xi).real();
    return re * re;
}

PulseOptimum best_probe_pulse(double alpha_abs) {
    double nbar = std::round(4.0 * alpha_abs * alpha_abs);
    double hi = 2.0 * M_PI / std::sqrt(nbar);

    // Dense scan, then golden-section refinement of the best bracket.
    double best_gt = hi, best_p = 0.0;
    constexpr int kGrid = 512;
    for (int i = 1; i <= kGrid; ++i) {
        double gt = hi * i / kGrid;
        double p = probe_click_probability(alpha_abs, gt);
        if (p > best_p) {
            best_p = p;
            best_gt = gt;
        }
    }
    double lo2 = best_gt - hi / kGrid, hi2 = best_gt + hi / kGrid;
    if (lo2 <= 0.0) lo2 = hi / (4.0 * kGrid);
    constexpr double kInvPhi = 0.6180339887498949;
    for (int it = 0; it < 120; ++it) {
        double m1 = hi2 - (hi2 - lo2) * kInvPhi;
        double m2 = lo2 + (hi2 - lo2) * kInvPhi;
        if (probe_click_probability(alpha_abs, m1) < probe_click_probability(alpha_abs, m2)) {
            lo2 = m1;
        } else {
            hi2 = m2;
        }
    }
    double gt = 0.5 * (lo2 + hi2);
    return {gt, probe_click_probability(alpha_abs, gt)};
}

QubitOracle qubit_reference(std::complex<double> zeta, std::complex<double> xi) {
    using C = std::complex<double>;
    // Little-endian: amplitude index a1 + 2*a2 + 4*a4 + 8*c.
    auto idx = [](int a1, int a2, int a4, int c) { return a1 + 2 * a2 + 4 * a4 + 8 * c; };
    const C in[2] = {zeta, xi};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::array<C, 16> psi{};
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int c = 0; c < 2; ++c) {
                // Pair term delta_{a2,a4}/sqrt(2); cavity term 1/sqrt(2).
                psi[idx(a1, a2, a2, c)] += in[a1] * inv_sqrt2 * inv_sqrt2;
            }
        }
    }

    // |A1>|A2>|C> -> |A1 xor C>|A2 xor C>|C>: permutation of basis states.
    std::array<C, 16> after{};
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int a4 = 0; a4 < 2; ++a4) {
                for (int c = 0; c < 2; ++c) {
                    after[idx(a1 ^ c, a2 ^ c, a4, c)] += psi[idx(a1, a2, a4, c)];
                }
            }
        }
    }

    QubitOracle out;
    const std::array<std::pair<int, int>, 4> order = {
        std::pair<int, int>{0, 0}, {1, 1}, {0, 1}, {1, 0}};

    for (std::size_t k = 0; k < 4; ++k) {
        auto [a1, a2] = order[k];
        double pre = 0.0;
        for (int a4 = 0; a4 < 2; ++a4) {
            for (int c = 0; c < 2; ++c) pre += std::norm(after[idx(a1, a2, a4, c)]);
        }
        out.premerge[k] = pre;
    }

    // Merge: project the cavity qubit onto (|0> + |1>)/sqrt(2).
    std::array<C, 8> merged{};
    double merge_p = 0.0;
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int a4 = 0; a4 < 2; ++a4) {
                C m = (after[idx(a1, a2, a4, 0)] + after[idx(a1, a2, a4, 1)]) * inv_sqrt2;
                merged[a1 + 2 * a2 + 4 * a4] = m;
                merge_p += std::norm(m);
            }
        }
    }
    out.merge_probability = merge_p;

    for (std::size_t k = 0; k < 4; ++k) {
        auto [a1, a2] = order[k];
        C raw0 = merged[a1 + 2 * a2 + 0];
        C raw1 = merged[a1 + 2 * a2 + 4];
        double p = (std::norm(raw0) + std::norm(raw1)) / merge_p;
        out.conditioned[k] = p;

        double nrm = std::sqrt(std::norm(raw0) + std::norm(raw1));
        C u0 = raw0 / nrm, u1 = raw1 / nrm;
        out.overlap_before[k] = std::norm(std::conj(zeta) * u0 + std::conj(xi) * u1);
        if (a1 != a2) std::swap(u0, u1);  // classical feed-forward bit flip
        out.corrected[k] = {u0, u1};
    }
    return out;
}

}  // namespace oracles
