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

#ifndef LAMBDACAV_MEASUREMENT_HPP
#define LAMBDACAV_MEASUREMENT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "lambdacav/fockspace.hpp"

namespace lambdacav {

/// Branches whose probability is at or below this cutoff are omitted from
/// measure/enumerate_joint results (exact zeros plus rounding dust).
inline constexpr double kZeroBranchCutoff = 1e-18;

/// Post-selecting an outcome below this probability is an error.
inline constexpr double kPostSelectionFloor = 1e-15;

/// One measurement outcome. The measured subsystems are removed from
/// `state`, which is left unnormalized: its squared norm equals
/// `probability`.
struct Branch {
    // (original subsystem index, measured level), in measurement order.
    std::vector<std::pair<std::size_t, int>> labels;
    CompositeState state;
    double probability = 0.0;
};

/// Projective measurement of one atomic subsystem in its energy basis.
/// Returns one Branch per level with probability above kZeroBranchCutoff.
/// Throws UnsupportedError for cavity subsystems: the field is never
/// detected directly.
std::vector<Branch> measure(const CompositeState &s, std::size_t subsystem_index);

/// Result of post_select: the named branch, normalized.
struct PostSelection {
    double probability = 0.0;
    CompositeState state;
};

/// Keeps only the branch where `subsystem_index` reads `level`. Throws
/// PostSelectionError if that branch's probability is below
/// kPostSelectionFloor.
PostSelection post_select(const CompositeState &s, std::size_t subsystem_index, int level);

/// Complete branch set over the Cartesian product of the addressed atoms'
/// levels, ordered lexicographically with the FIRST listed subsystem
/// slowest. Probabilities sum to the squared norm of `s`.
std::vector<Branch> enumerate_joint(const CompositeState &s,
                                    const std::vector<std::size_t> &subsystem_indices);

/// Inverse-CDF pick over `branches` in declaration order using `u` in
/// [0, 1). Exposed so multi-step drivers can share one generator.
const Branch &sample_at(const std::vector<Branch> &branches, double u);

/// Deterministic sample: seeds a mt19937_64 with `seed`, draws one uniform
/// deviate as (rng() >> 11) * 2^-53 (bit-stable across platforms, unlike
/// std::uniform_real_distribution), and walks the CDF in declaration order.
/// Probabilities must sum to 1 within 1e-6.
const Branch &sample(const std::vector<Branch> &branches, std::uint64_t seed);

}  // namespace lambdacav

#endif
