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

#include "lambdacav/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lambdacav {

namespace {

void check_atom(const CompositeState &s, std::size_t index) {
    if (index >= s.subsystems.size()) {
        std::ostringstream msg;
        msg << "subsystem index " << index << " out of range";
        throw ShapeError(msg.str());
    }
    if (!s.subsystems[index].is_atom()) {
        throw UnsupportedError("the field is never detected directly; measure atoms only");
    }
}

// Flat offsets of the reduced state (all `measured` digits zero), in the
// reduced state's own row-major order.
std::vector<std::size_t> reduced_bases(const CompositeState &s,
                                       const std::vector<std::size_t> &measured) {
    std::vector<std::size_t> bases{0};
    for (std::size_t i = 0; i < s.subsystems.size(); ++i) {
        if (std::find(measured.begin(), measured.end(), i) != measured.end()) continue;
        std::size_t d = static_cast<std::size_t>(s.subsystems[i].dim);
        std::size_t st = s.stride(i);
        std::vector<std::size_t> next;
        next.reserve(bases.size() * d);
        for (std::size_t b : bases) {
            for (std::size_t dig = 0; dig < d; ++dig) next.push_back(b + dig * st);
        }
        bases = std::move(next);
    }
    return bases;
}

std::vector<SubsystemKind> reduced_kinds(const CompositeState &s,
                                         const std::vector<std::size_t> &measured) {
    std::vector<SubsystemKind> kinds;
    for (std::size_t i = 0; i < s.subsystems.size(); ++i) {
        if (std::find(measured.begin(), measured.end(), i) == measured.end()) {
            kinds.push_back(s.subsystems[i]);
        }
    }
    return kinds;
}

// The slice where the measured subsystems read the given levels, with those
// subsystems removed.
Branch make_branch(const CompositeState &s, const std::vector<std::size_t> &measured,
                   const std::vector<int> &levels, const std::vector<std::size_t> &bases,
                   const std::vector<SubsystemKind> &kinds) {
    std::size_t offset = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) {
        offset += static_cast<std::size_t>(levels[k]) * s.stride(measured[k]);
    }
    Branch br;
    br.state.subsystems = kinds;
    br.state.amps.resize(bases.size());
    double p = 0.0;
    for (std::size_t j = 0; j < bases.size(); ++j) {
        Amp a = s.amps[bases[j] + offset];
        br.state.amps[j] = a;
        p += std::norm(a);
    }
    br.probability = p;
    br.labels.reserve(measured.size());
    for (std::size_t k = 0; k < measured.size(); ++k) {
        br.labels.emplace_back(measured[k], levels[k]);
    }
    return br;
}

}  // namespace

std::vector<Branch> measure(const CompositeState &s, std::size_t subsystem_index) {
    check_atom(s, subsystem_index);
    std::vector<std::size_t> measured{subsystem_index};
    std::vector<std::size_t> bases = reduced_bases(s, measured);
    std::vector<SubsystemKind> kinds = reduced_kinds(s, measured);
    std::vector<Branch> out;
    for (int l = 0; l < s.subsystems[subsystem_index].dim; ++l) {
        Branch br = make_branch(s, measured, {l}, bases, kinds);
        if (br.probability > kZeroBranchCutoff) out.push_back(std::move(br));
    }
    return out;
}

PostSelection post_select(const CompositeState &s, std::size_t subsystem_index, int level) {
    check_atom(s, subsystem_index);
    if (level < 0 || level >= s.subsystems[subsystem_index].dim) {
        throw DomainError("post-selected level out of range");
    }
    std::vector<std::size_t> measured{subsystem_index};
    Branch br = make_branch(s, measured, {level}, reduced_bases(s, measured),
                            reduced_kinds(s, measured));
    if (br.probability < kPostSelectionFloor) {
        std::ostringstream msg;
        msg << "post-selected outcome has probability " << br.probability << " (below "
            << kPostSelectionFloor << ")";
        throw PostSelectionError(msg.str());
    }
    return {br.probability, normalized(br.state)};
}

std::vector<Branch> enumerate_joint(const CompositeState &s,
                                    const std::vector<std::size_t> &subsystem_indices) {
    if (subsystem_indices.empty()) throw ShapeError("enumerate_joint needs at least one atom");
    for (std::size_t i = 0; i < subsystem_indices.size(); ++i) {
        check_atom(s, subsystem_indices[i]);
        for (std::size_t j = i + 1; j < subsystem_indices.size(); ++j) {
            if (subsystem_indices[i] == subsystem_indices[j]) {
                throw ShapeError("enumerate_joint indices must be distinct");
            }
        }
    }
    std::vector<std::size_t> bases = reduced_bases(s, subsystem_indices);
    std::vector<SubsystemKind> kinds = reduced_kinds(s, subsystem_indices);

    // Odometer over level tuples, first listed subsystem slowest.
    std::vector<int> levels(subsystem_indices.size(), 0);
    std::vector<Branch> out;
    for (;;) {
        Branch br = make_branch(s, subsystem_indices, levels, bases, kinds);
        if (br.probability > kZeroBranchCutoff) out.push_back(std::move(br));
        std::size_t k = subsystem_indices.size();
        while (k-- > 0) {
            if (++levels[k] < s.subsystems[subsystem_indices[k]].dim) break;
            levels[k] = 0;
            if (k == 0) return out;
        }
    }
}

const Branch &sample_at(const std::vector<Branch> &branches, double u) {
    if (branches.empty()) throw DomainError("cannot sample from an empty branch list");
    double acc = 0.0;
    const Branch *last_positive = nullptr;
    for (const Branch &br : branches) {
        acc += br.probability;
        if (br.probability > 0.0) {
            last_positive = &br;
            if (u < acc) return br;
        }
    }
    // Rounding pushed u past the accumulated total; the last branch with
    // any probability takes it.
    if (last_positive == nullptr) throw DomainError("all branch probabilities are zero");
    return *last_positive;
}

const Branch &sample(const std::vector<Branch> &branches, std::uint64_t seed) {
    if (branches.empty()) throw DomainError("cannot sample from an empty branch list");
    double total = 0.0;
    for (const Branch &br : branches) total += br.probability;
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "branch probabilities sum to " << total << ", not 1";
        throw DomainError(msg.str());
    }
    std::mt19937_64 gen(seed);
    // Top 53 bits scaled into [0, 1); stable across standard libraries.
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return sample_at(branches, u);
}

}  // namespace lambdacav
