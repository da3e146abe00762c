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

#include <cstdint>
#include <limits>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/graph_planner.hpp"
#include "reachplan/work.hpp"

namespace reachplan {

/// Maximal end-components. Vertices outside every MEC map to `none`.
struct MecDecomposition {
    static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    std::vector<VertexSet> mecs;
    std::vector<std::uint32_t> mec_of;
};

/// SCC-refinement MEC decomposition, O(n * m) in the worst case.
MecDecomposition mec_decompose(const Arena& mdp, WorkCounters* counters = nullptr);

/// Least A with B <= A <= within such that a random vertex joins when some
/// successor is in A and a player-1 vertex joins when it has successors
/// inside `within` and all of them are in A.
VertexSet random_attractor(const Arena& mdp, const VertexSet& base, const VertexSet& within,
                           WorkCounters* counters = nullptr);

/// MDP with every MEC collapsed to a single player-1 vertex. Collapsed bottom
/// MECs become sinks; self-loops are dropped.
struct QuotientMdp {
    Arena arena;
    std::vector<Vertex> rep_of;
    TargetTuple targets;
};

QuotientMdp build_quotient(const Arena& mdp, const TargetTuple& targets, const MecDecomposition& mecs,
                           WorkCounters* counters = nullptr);

/// Rewrites a target tuple through an existing quotient's rep_of map.
TargetTuple map_targets(const QuotientMdp& quotient, const TargetTuple& targets,
                        WorkCounters* counters = nullptr);

/// Label propagation for MEC-free MDPs. When the queue of fully processed
/// vertices is empty the random vertex with the largest best value is
/// processed next (ties: smallest index). Throws MALFORMED if no such
/// vertex exists, which only happens when the input has an end-component.
Labeling mecfree_sequential(const Arena& mecfree, const TargetTuple& targets, const SolveOptions& options = {});

SequentialResult mdp_sequential(const Query& query, const SolveOptions& options = {});

/// Almost-sure winning set for Reach(target).
VertexSet mdp_as_reach(const Arena& mdp, const VertexSet& target, const SolveOptions& options = {});

/// k almost-sure reachability computations over one shared MEC quotient.
CoverageResult mdp_coverage(const Query& query, const SolveOptions& options = {});

}  // namespace reachplan
