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

#include "reachplan/reductions.hpp"

#include <random>
#include <unordered_set>

namespace reachplan {

std::string_view to_string(ReductionId id)
{
    switch (id) {
    case ReductionId::ov_mdp: return "ov-mdp";
    case ReductionId::tri_mdp: return "tri-mdp";
    case ReductionId::ov_game: return "ov-game";
    case ReductionId::tri_game: return "tri-game";
    case ReductionId::ov_game_seq: return "ov-game-seq";
    case ReductionId::tri_game_seq: return "tri-game-seq";
    }
    return "?";
}

bool is_ov_reduction(ReductionId id) noexcept
{
    return id == ReductionId::ov_mdp || id == ReductionId::ov_game || id == ReductionId::ov_game_seq;
}

namespace {

std::size_t check_ov(const OvInstance& ov)
{
    if (ov.s1.empty() || ov.s1.size() != ov.s2.size()) {
        throw Error(ErrorCode::dimension, "OV instance needs two non-empty sets of equal size");
    }
    const auto d = ov.s1.front().size();
    if (d == 0) throw Error(ErrorCode::dimension, "OV vectors need dimension >= 1");
    for (const auto* set : {&ov.s1, &ov.s2}) {
        for (const auto& v : *set) {
            if (v.size() != d) throw Error(ErrorCode::dimension, "OV vectors have mixed dimensions");
        }
    }
    return d;
}

ReductionInstance build_ov(const OvInstance& ov, ReductionId id)
{
    const auto d = check_ov(ov);
    const auto count = ov.s1.size();
    const Vertex s = 0;
    auto x = [&](std::size_t i) { return static_cast<Vertex>(1 + i); };
    auto c = [&](std::size_t j) { return static_cast<Vertex>(1 + count + j); };
    auto y = [&](std::size_t i) { return static_cast<Vertex>(1 + count + d + i); };
    const auto n = 1 + 2 * count + d;

    const Kind kind = id == ReductionId::ov_mdp ? Kind::mdp : Kind::game;
    std::vector<Owner> owners(n, Owner::p1);
    owners[s] = kind == Kind::mdp ? Owner::random : Owner::p2;

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < count; ++i) edges.emplace_back(s, x(i));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (ov.s1[i][j]) edges.emplace_back(x(i), c(j));
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (ov.s2[i][j]) edges.emplace_back(c(j), y(i));
        }
    }
    if (id == ReductionId::ov_game_seq) {
        for (std::size_t i = 0; i < count; ++i) edges.emplace_back(y(i), s);
    }

    ReductionInstance r;
    r.id = id;
    r.query.arena = normalize_sinks(Arena::build(kind, std::move(owners), edges));
    for (std::size_t i = 0; i < count; ++i) r.query.targets.sets.push_back({y(i)});
    r.query.objective = id == ReductionId::ov_game_seq ? Objective::sequential : Objective::coverage;
    r.query.start = s;
    r.truth = !oracle::ov_bruteforce(ov.s1, ov.s2);
    r.source = ov;
    return r;
}

ReductionInstance build_triangle(const Arena& g, ReductionId id)
{
    if (g.kind() != Kind::graph) throw Error(ErrorCode::kind_mismatch, "triangle source must be a graph");
    const auto n = g.size();
    for (Vertex v = 0; v < n; ++v) {
        if (g.has_edge(v, v)) throw Error(ErrorCode::self_loop, "source graph has a self-loop at " + std::to_string(v));
        if (g.out(v).empty()) throw Error(ErrorCode::sink, "source graph vertex " + std::to_string(v) + " has no out-edge");
    }
    const Vertex s = 0;
    auto copy = [&](std::size_t layer, Vertex i) { return static_cast<Vertex>(1 + (layer - 1) * n + i); };
    const auto size = 4 * n + 1;

    const Kind kind = id == ReductionId::tri_mdp ? Kind::mdp : Kind::game;
    std::vector<Owner> owners(size, kind == Kind::mdp ? Owner::random : Owner::p2);

    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i) edges.emplace_back(s, copy(1, i));
    for (std::size_t layer = 1; layer <= 3; ++layer) {
        for (const auto& [u, v] : g.edges()) edges.emplace_back(copy(layer, u), copy(layer + 1, v));
    }
    if (id == ReductionId::tri_game_seq) {
        for (Vertex i = 0; i < n; ++i) edges.emplace_back(copy(4, i), s);
    }

    ReductionInstance r;
    r.id = id;
    r.query.arena = normalize_sinks(Arena::build(kind, std::move(owners), edges));
    for (Vertex i = 0; i < n; ++i) {
        VertexSet t;
        for (Vertex l = 0; l < n; ++l) {
            if (l != i) t.push_back(copy(1, l));
        }
        for (Vertex l = 0; l < n; ++l) {
            if (l != i) t.push_back(copy(4, l));
        }
        r.query.targets.sets.push_back(std::move(t));
    }
    r.query.objective = id == ReductionId::tri_game_seq ? Objective::sequential : Objective::coverage;
    r.query.start = s;
    r.truth = !oracle::triangle_bruteforce(g);
    r.source = g;
    return r;
}

}  // namespace

ReductionInstance reduce_ov_mdp(const OvInstance& ov) { return build_ov(ov, ReductionId::ov_mdp); }
ReductionInstance reduce_ov_game(const OvInstance& ov) { return build_ov(ov, ReductionId::ov_game); }
ReductionInstance reduce_ov_game_seq(const OvInstance& ov) { return build_ov(ov, ReductionId::ov_game_seq); }
ReductionInstance reduce_triangle_mdp(const Arena& g) { return build_triangle(g, ReductionId::tri_mdp); }
ReductionInstance reduce_triangle_game(const Arena& g) { return build_triangle(g, ReductionId::tri_game); }
ReductionInstance reduce_triangle_game_seq(const Arena& g) { return build_triangle(g, ReductionId::tri_game_seq); }

ReductionInstance reduce(ReductionId id, const OvInstance& ov)
{
    if (!is_ov_reduction(id)) throw Error(ErrorCode::kind_mismatch, "reduction expects a triangle source");
    return build_ov(ov, id);
}

ReductionInstance reduce(ReductionId id, const Arena& graph)
{
    if (is_ov_reduction(id)) throw Error(ErrorCode::kind_mismatch, "reduction expects an OV source");
    return build_triangle(graph, id);
}

OvInstance random_ov(std::size_t count, std::size_t dimension, double density, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution bit(density);
    auto vectors = [&] {
        std::vector<BitVector> set(count, BitVector(dimension, 0));
        for (auto& v : set) {
            for (auto& b : v) b = bit(rng) ? 1 : 0;
        }
        return set;
    };
    OvInstance ov;
    ov.s1 = vectors();
    ov.s2 = vectors();
    return ov;
}

Arena random_sink_free_graph(std::size_t n, double edge_probability, std::uint64_t seed)
{
    if (n < 2) throw Error(ErrorCode::infeasible, "a sink-free graph without self-loops needs n >= 2");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(edge_probability);
    std::uniform_int_distribution<Vertex> other(0, static_cast<Vertex>(n - 2));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        bool any = false;
        for (Vertex v = 0; v < n; ++v) {
            if (u != v && coin(rng)) {
                edges.emplace_back(u, v);
                any = true;
            }
        }
        if (!any) {
            Vertex v = other(rng);
            edges.emplace_back(u, v >= u ? v + 1 : v);
        }
    }
    return Arena::build(Kind::graph, std::vector<Owner>(n, Owner::p1), edges);
}

Arena bidirected_triangle()
{
    const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}};
    return Arena::build(Kind::graph, std::vector<Owner>(3, Owner::p1), edges);
}

Arena directed_cycle(std::size_t n)
{
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return Arena::build(Kind::graph, std::vector<Owner>(n, Owner::p1), edges);
}

Query gen_random(const GenParams& p)
{
    if (p.n == 0) throw Error(ErrorCode::infeasible, "n must be positive");
    if (p.m < p.n) throw Error(ErrorCode::infeasible, "need m >= n so every vertex can get an out-edge");
    if (p.m > p.n * p.n) throw Error(ErrorCode::infeasible, "m exceeds n*n distinct edges");
    if (p.objective == Objective::reach && p.k != 1) {
        throw Error(ErrorCode::infeasible, "objective reach needs k = 1");
    }

    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(p.n - 1));
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution member(p.target_density);

    std::vector<Owner> owners(p.n, Owner::p1);
    for (auto& o : owners) {
        switch (p.kind) {
        case Kind::graph: break;
        case Kind::mdp: o = coin(rng) ? Owner::random : Owner::p1; break;
        case Kind::game: o = coin(rng) ? Owner::p2 : Owner::p1; break;
        }
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    edges.reserve(p.m);
    auto add = [&](Vertex u, Vertex v) {
        if (seen.insert(static_cast<std::uint64_t>(u) * p.n + v).second) edges.emplace_back(u, v);
    };
    for (Vertex u = 0; u < p.n; ++u) add(u, pick(rng));
    while (edges.size() < p.m) add(pick(rng), pick(rng));

    Query q;
    q.arena = Arena::build(p.kind, std::move(owners), edges);
    for (std::size_t i = 0; i < p.k; ++i) {
        VertexSet t;
        for (Vertex v = 0; v < p.n; ++v) {
            if (member(rng)) t.push_back(v);
        }
        q.targets.sets.push_back(std::move(t));
    }
    q.objective = p.objective;
    q.start = pick(rng);
    return q;
}

}  // namespace reachplan
