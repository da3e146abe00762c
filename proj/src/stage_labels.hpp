/*
 * Copyright 2026 The reachplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/work.hpp"

namespace reachplan::detail {

/// L_v: for each vertex the (1-based) indices of the target sets containing
/// it, stored CSR style. Built in O(n + sum |T_i|).
class StageMembership {
public:
    StageMembership(std::size_t n, const TargetTuple& targets, WorkCounters* counters)
        : offsets_(n + 1, 0)
    {
        for (const auto& set : targets.sets) {
            for (Vertex v : set) ++offsets_[v + 1];
        }
        for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
        stages_.resize(offsets_[n]);
        std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::uint32_t i = 0; i < targets.sets.size(); ++i) {
            for (Vertex v : targets.sets[i]) stages_[fill[v]++] = i + 1;
        }
        if (counters) counters->target_entries += stages_.size();
    }

    std::span<const std::uint32_t> of(Vertex v) const
    {
        return std::span<const std::uint32_t>(stages_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
    }

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> stages_;
};

/// The shared bitmap A[1..k]. It is set from L_v, consulted while the label
/// walks down from best_v, and cleared again, so it is all-zero between
/// calls.
class StageScratch {
public:
    explicit StageScratch(std::uint32_t k) : marks_(static_cast<std::size_t>(k) + 1, 0) {}

    std::uint32_t label(std::uint32_t best, std::span<const std::uint32_t> stages, WorkCounters* counters)
    {
        for (auto i : stages) marks_[i] = 1;
        std::uint32_t ell = best;
        while (ell > 1 && marks_[ell - 1]) --ell;
        for (auto i : stages) marks_[i] = 0;
        if (counters) counters->target_entries += 2 * stages.size();
        return ell;
    }

    bool clean() const
    {
        return std::all_of(marks_.begin(), marks_.end(), [](std::uint8_t b) { return b == 0; });
    }

private:
    std::vector<std::uint8_t> marks_;
};

inline constexpr std::uint32_t nil = 0;

}  // namespace reachplan::detail
