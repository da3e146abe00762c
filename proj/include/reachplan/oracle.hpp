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

// Brute-force reference semantics. Nothing here may include or call the
// planner modules; the only shared code is the Arena type.

#include <cstdint>
#include <vector>

#include "reachplan/arena.hpp"

namespace reachplan::oracle {

/// Arena x stage counter. State (v, i) with i in 1..k+1 has id
/// v * (k + 1) + (i - 1). Before leaving v the stage skips every
/// consecutive j >= i with v in T_j.
struct Product {
    Arena arena;
    std::vector<std::uint8_t> accepting;
    std::uint32_t k = 0;

    Vertex state(Vertex v, std::uint32_t stage) const { return v * (k + 1) + (stage - 1); }
};

Product product_expand(const Arena& arena, const TargetTuple& targets);

/// Least i such that (v, i) wins in the product; k + 1 when only the empty
/// suffix is achievable.
std::vector<std::uint32_t> graph_sequential_labels(const Arena& graph, const TargetTuple& targets);
std::vector<std::uint32_t> mdp_sequential_labels(const Arena& mdp, const TargetTuple& targets);

VertexSet graph_sequential(const Query& query);
VertexSet game_sequential(const Query& query);
VertexSet mdp_sequential(const Query& query);

/// Winning region for Reach(target) under each model's semantics.
VertexSet graph_reach(const Arena& graph, const VertexSet& target);
VertexSet game_attractor(const Arena& game, const VertexSet& target);
VertexSet reach_region(const Arena& arena, const VertexSet& target);

/// Classical removal loop: drop vertices that cannot reach the target,
/// together with their random attractor, until stable.
VertexSet as_reach_fixpoint(const Arena& mdp, const VertexSet& target);

/// Enumerates all memoryless player-1 strategies (capped at `max_strategies`,
/// RANGE otherwise) and keeps the vertices from which some induced chain
/// with the target made absorbing has only target bottom SCCs.
VertexSet as_reach_by_strategy_enumeration(const Arena& mdp, const VertexSet& target,
                                           std::uint64_t max_strategies = 1'000'000);

/// Reflexive-transitive closure as an n x n matrix.
std::vector<std::vector<std::uint8_t>> closure(const Arena& arena);

/// SCCs as mutual-reachability classes, each sorted, ordered by least member.
std::vector<VertexSet> scc_by_closure(const Arena& arena);

/// Maximal end-components by subset enumeration (n <= 20).
std::vector<VertexSet> mecs_by_enumeration(const Arena& mdp);

using BitVector = std::vector<std::uint8_t>;

bool ov_bruteforce(const std::vector<BitVector>& s1, const std::vector<BitVector>& s2);

/// Directed triangle (x,y),(y,z),(z,x) via an edge-pair scan; self-loops
/// are ignored.
bool triangle_bruteforce(const Arena& graph);
bool triangle_by_triples(const Arena& graph);

}  // namespace reachplan::oracle
