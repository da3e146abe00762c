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

#include <random>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/reductions.hpp"

namespace reachplan::testing {

// Three-vertex example: v1=0 -> v2=1, v2 -> v1, v2 -> v3=2, v3 self-loop.
inline Arena three_vertex(Kind kind)
{
    const Owner middle = kind == Kind::mdp ? Owner::random : kind == Kind::game ? Owner::p2 : Owner::p1;
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 2}};
    return Arena::build(kind, {Owner::p1, middle, Owner::p1}, edges);
}

inline Query three_vertex_query(Kind kind, Objective objective, std::vector<VertexSet> sets, Vertex start = 0)
{
    Query q;
    q.arena = three_vertex(kind);
    q.targets = make_targets(std::move(sets), 3);
    q.objective = objective;
    q.start = start;
    return q;
}

inline Arena graph_from(std::size_t n, const std::vector<Edge>& edges)
{
    return Arena::build(Kind::graph, std::vector<Owner>(n, Owner::p1), edges);
}

inline Query random_query(Kind kind, Objective objective, std::uint64_t seed, std::size_t max_n = 8,
                          std::size_t max_k = 3)
{
    std::mt19937_64 rng(seed * 7919 + 17);
    GenParams p;
    p.kind = kind;
    p.objective = objective;
    p.n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
    p.m = std::uniform_int_distribution<std::size_t>(p.n, std::min<std::size_t>(3 * p.n, p.n * p.n))(rng);
    p.k = objective == Objective::reach ? 1 : std::uniform_int_distribution<std::size_t>(0, max_k)(rng);
    p.target_density = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    p.seed = seed;
    return gen_random(p);
}

}  // namespace reachplan::testing
