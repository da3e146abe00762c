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
#include <string_view>
#include <variant>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/oracle.hpp"

namespace reachplan {

using oracle::BitVector;

struct OvInstance {
    std::vector<BitVector> s1;
    std::vector<BitVector> s2;
};

enum class ReductionId : std::uint8_t { ov_mdp, tri_mdp, ov_game, tri_game, ov_game_seq, tri_game_seq };

std::string_view to_string(ReductionId id);

/// A generated query plus the answer the source instance dictates at the
/// start vertex.
struct ReductionInstance {
    Query query;
    bool truth = false;
    ReductionId id = ReductionId::ov_mdp;
    std::variant<OvInstance, Arena> source;
};

// Orthogonal-vectors reductions. Index layout: s = 0, x_i = 1 + i,
// c_j = 1 + N + j, y_i = 1 + N + d + i. Targets T_i = {y_i}.
// Throws DIMENSION on ragged or empty input.
ReductionInstance reduce_ov_mdp(const OvInstance& ov);
ReductionInstance reduce_ov_game(const OvInstance& ov);
ReductionInstance reduce_ov_game_seq(const OvInstance& ov);

// Triangle reductions over a sink-free graph without self-loops. Layout:
// s = 0, copy j in 1..4 of vertex i is 1 + (j - 1) * n + i. Targets
// T_i = V_1 \ {v_1i} u V_4 \ {v_4i}. Throws SELF_LOOP or SINK.
ReductionInstance reduce_triangle_mdp(const Arena& graph);
ReductionInstance reduce_triangle_game(const Arena& graph);
ReductionInstance reduce_triangle_game_seq(const Arena& graph);

ReductionInstance reduce(ReductionId id, const OvInstance& ov);
ReductionInstance reduce(ReductionId id, const Arena& graph);
bool is_ov_reduction(ReductionId id) noexcept;

OvInstance random_ov(std::size_t count, std::size_t dimension, double density, std::uint64_t seed);

/// Random graph without self-loops where every vertex has an out-edge.
Arena random_sink_free_graph(std::size_t n, double edge_probability, std::uint64_t seed);

Arena bidirected_triangle();
Arena directed_cycle(std::size_t n);

struct GenParams {
    Kind kind = Kind::graph;
    Objective objective = Objective::sequential;
    std::size_t n = 8;
    std::size_t m = 16;
    std::size_t k = 2;
    double target_density = 0.25;
    std::uint64_t seed = 0;
};

/// Seeded random query with exactly m distinct edges and no sinks. Owners
/// are uniform over the kind's legal tags. Throws INFEASIBLE unless
/// n <= m <= n * n.
Query gen_random(const GenParams& params);

}  // namespace reachplan
