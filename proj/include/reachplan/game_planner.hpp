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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/graph_planner.hpp"
#include "reachplan/work.hpp"

namespace reachplan {

inline constexpr Vertex no_vertex = std::numeric_limits<Vertex>::max();
inline constexpr std::uint32_t no_rank = std::numeric_limits<std::uint32_t>::max();

struct AttractorResult {
    VertexSet set;
    /// Chosen successor for player-1 vertices in set \ T, no_vertex elsewhere.
    std::vector<Vertex> strategy;
    /// BFS layer at which a vertex joined; 0 for targets, no_rank outside.
    std::vector<std::uint32_t> rank;
};

/// Player-1 attractor via predecessor counters; every edge is looked at once.
AttractorResult attractor_p1(const Arena& game, const VertexSet& target, WorkCounters* counters = nullptr);

CoverageResult game_coverage(const Query& query, const SolveOptions& options = {});

struct GameSequentialResult {
    bool winning = false;
    VertexSet winning_set;
    /// stages[i] is the attractor for stage i + 1, i.e. of T_{i+1} & S_{i+2}.
    std::vector<AttractorResult> stages;
};

/// Nested attractors S_k = Attr(T_k), S_l = Attr(T_l & S_{l+1}).
GameSequentialResult game_sequential(const Query& query, const SolveOptions& options = {});

/// Lines "stage <l> vertex <v> choose <w>", sorted by stage then vertex.
std::string format_strategy(const GameSequentialResult& result);

/// Plays the staged strategy from `start` against `adversary`, which picks a
/// successor for player-2 vertices. Returns the number of stages completed
/// (k on success). The play is cut off after `max_steps` moves.
using Adversary = std::function<Vertex(Vertex, std::span<const Vertex>)>;
std::uint32_t play_staged_strategy(const Arena& game, const TargetTuple& targets, const GameSequentialResult& result,
                                   Vertex start, const Adversary& adversary, std::size_t max_steps,
                                   std::vector<Vertex>* trace = nullptr);

}  // namespace reachplan
