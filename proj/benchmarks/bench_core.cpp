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

// Microbenchmarks of the hot paths: state construction, the three cavity
// propagators, product extraction, and the two protocol drivers. Cutoffs
// are swept with Arg(n_max) where the cost scales with the Fock dimension.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <lambdacav/fockspace.hpp>
#include <lambdacav/operators.hpp>
#include <lambdacav/protocols.hpp>

namespace {

using namespace lambdacav;

const double kPi = std::numbers::pi;

CompositeState atom_cavity_probe(int n_max) {
    CavityMode mode{n_max, kDefaultTailTolerance};
    Amp alpha(std::sqrt(n_max / 4.0), 0);  // keep the tail clear of the cutoff
    return tensor(tensor(atom3_state(kLevelB), atom2_state(kLevelF)),
                  coherent_state(alpha, mode));
}

void BM_CoherentState(benchmark::State &state) {
    CavityMode mode{static_cast<int>(state.range(0)), kDefaultTailTolerance};
    Amp alpha(std::sqrt(state.range(0) / 4.0), 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coherent_state(alpha, mode));
    }
}
BENCHMARK(BM_CoherentState)->Arg(32)->Arg(64)->Arg(128);

void BM_Displace(benchmark::State &state) {
    CompositeState s = atom_cavity_probe(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(displace(s, 2, Amp(0.5, 0.25)));
    }
}
BENCHMARK(BM_Displace)->Arg(32)->Arg(64)->Arg(128);

void BM_DispersiveEvolve(benchmark::State &state) {
    CompositeState s = atom_cavity_probe(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dispersive_lambda_evolve(s, 0, 2, kPi));
    }
}
BENCHMARK(BM_DispersiveEvolve)->Arg(32)->Arg(64)->Arg(128);

void BM_JcEvolve(benchmark::State &state) {
    CompositeState s = atom_cavity_probe(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(jc_evolve(s, 1, 2, kPi / 8.0));
    }
}
BENCHMARK(BM_JcEvolve)->Arg(32)->Arg(64)->Arg(128);

void BM_FactorOut(benchmark::State &state) {
    CavityMode mode{static_cast<int>(state.range(0)), kDefaultTailTolerance};
    CompositeState pair = tensor(atom3_state(kLevelB), atom3_state(kLevelB));
    CompositeState s = tensor(pair, coherent_state(Amp(2, 0), mode));
    for (auto _ : state) {
        benchmark::DoNotOptimize(factor_out(s, {0, 1}));
    }
}
BENCHMARK(BM_FactorOut)->Arg(32)->Arg(64)->Arg(128);

void BM_PrepareEpr(benchmark::State &state) {
    Amp alpha(2, 0);
    double gt = probe_pulse_heuristic(alpha);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prepare_epr(alpha, gt, BellVariant::PsiPlus, default_n_max(alpha)));
    }
}
BENCHMARK(BM_PrepareEpr);

void BM_Teleport(benchmark::State &state) {
    TeleportConfig cfg;
    cfg.zeta = Amp(0.8, 0);
    cfg.xi = Amp(0.6, 0);
    cfg.alpha = Amp(2, 0);
    cfg.probe_gt = probe_pulse_heuristic(cfg.alpha);
    for (auto _ : state) {
        benchmark::DoNotOptimize(teleport(cfg));
    }
}
BENCHMARK(BM_Teleport);

}  // namespace

BENCHMARK_MAIN();
