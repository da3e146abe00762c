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

#include <algorithm>
#include <numeric>
#include <queue>

#include <doctest.h>

#include "reachplan/graph_planner.hpp"
#include "reachplan/oracle.hpp"
#include "support.hpp"

using namespace reachplan;
using testing::graph_from;

namespace {

// Repeated edge relaxation until nothing changes.
VertexSet relaxation_row(const Arena& a, Vertex s)
{
    std::vector<bool> r(a.size(), false);
    r[s] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [u, v] : a.edges()) {
            if (r[u] && !r[v]) r[v] = changed = true;
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < a.size(); ++v) {
        if (r[v]) out.push_back(v);
    }
    return out;
}

bool acyclic(const Arena& a)
{
    std::vector<std::size_t> indeg(a.size());
    for (Vertex v = 0; v < a.size(); ++v) indeg[v] = a.in(v).size();
    std::queue<Vertex> q;
    for (Vertex v = 0; v < a.size(); ++v) {
        if (indeg[v] == 0) q.push(v);
    }
    std::size_t seen = 0;
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        ++seen;
        for (const Vertex v : a.out(u)) {
            if (--indeg[v] == 0) q.push(v);
        }
    }
    return seen == a.size();
}

TargetTuple tt(std::vector<VertexSet> sets, std::size_t n) { return make_targets(std::move(sets), n); }

}  // namespace

TEST_CASE("reachable_from")
{
    CHECK(reachable_from(testing::three_vertex(Kind::graph), 0) == VertexSet{0, 1, 2});
    CHECK(reachable_from(testing::three_vertex(Kind::graph), 2) == VertexSet{2});
    CHECK(reachable_from(graph_from(1, {{0, 0}}), 0) == VertexSet{0});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto q = testing::random_query(Kind::graph, Objective::reach, seed);
        CHECK(reachable_from(q.arena, q.start) == relaxation_row(q.arena, q.start));
    }
}

TEST_CASE("graph coverage")
{
    Query q;
    q.arena = graph_from(3, {{0, 1}, {1, 2}, {2, 2}});
    q.objective = Objective::coverage;
    q.targets = tt({{1}, {2}}, 3);
    auto r = graph_coverage(q);
    CHECK(r.per_target == std::vector<bool>{true, true});
    CHECK(r.winning);

    q.targets = tt({{}}, 3);
    r = graph_coverage(q);
    CHECK(r.per_target == std::vector<bool>{false});
    CHECK_FALSE(r.winning);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto rq = testing::random_query(Kind::graph, Objective::coverage, seed);
        const auto res = graph_coverage(rq);
        bool all = true;
        for (std::size_t i = 0; i < rq.targets.k(); ++i) {
            const bool hit = contains(oracle::graph_reach(rq.arena, rq.targets.sets[i]), rq.start);
            CHECK(res.per_target[i] == hit);
            all = all && hit;
        }
        CHECK(res.winning == all);
    }
}

TEST_CASE("scc_decompose")
{
    SUBCASE("two-cycle and a sink")
    {
        const auto p = scc_decompose(graph_from(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}}));
        CHECK(p.comps.size() == 2);
        CHECK(p.comp_of[0] == p.comp_of[1]);
        CHECK(p.comp_of[0] != p.comp_of[2]);
        CHECK(p.topo_order.front() == p.comp_of[2]);
    }
    SUBCASE("a DAG has singleton components")
    {
        const auto p = scc_decompose(graph_from(4, {{0, 1}, {1, 2}, {0, 3}, {2, 3}, {3, 3}}));
        CHECK(p.comps.size() == 4);
    }
    SUBCASE("matches mutual reachability")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto q = testing::random_query(Kind::graph, Objective::reach, seed, 10);
            auto comps = scc_decompose(q.arena).comps;
            std::sort(comps.begin(), comps.end());
            CHECK(comps == oracle::scc_by_closure(q.arena));
        }
    }
    SUBCASE("deep chain does not exhaust the stack")
    {
        const std::size_t n = 200000;
        std::vector<Edge> edges;
        for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
        edges.emplace_back(static_cast<Vertex>(n - 1), 0);
        const auto p = scc_decompose(graph_from(n, edges));
        CHECK(p.comps.size() == 1);
    }
}

TEST_CASE("condensation")
{
    SUBCASE("two-cycle collapses")
    {
        const auto c = condense_with_targets(graph_from(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}}), tt({{0}, {2}}, 3));
        CHECK(c.dag.size() == 2);
        CHECK(c.dag.edge_count() == 1);
        CHECK(c.targets.sets[0] == VertexSet{c.comp_of[0]});
        CHECK(c.targets.sets[1] == VertexSet{c.comp_of[2]});
    }
    SUBCASE("a DAG keeps its shape")
    {
        const auto g = graph_from(4, {{0, 1}, {1, 2}, {0, 3}, {2, 3}});
        const auto c = condense_with_targets(g, {});
        CHECK(c.dag.size() == 4);
        CHECK(c.dag.edge_count() == 4);
    }
    SUBCASE("always acyclic")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto q = testing::random_query(Kind::graph, Objective::sequential, seed, 12);
            CHECK(acyclic(condense_with_targets(q.arena, q.targets).dag));
        }
    }
}

TEST_CASE("dag_sequential")
{
    SUBCASE("chain u -> v -> w")
    {
        const auto dag = graph_from(3, {{0, 1}, {1, 2}});
        const auto l = dag_sequential(dag, tt({{1}, {2}}, 3));
        CHECK(l.ell == std::vector<std::uint32_t>{1, 1, 2});
        CHECK(l.winners() == VertexSet{0, 1});
    }
    SUBCASE("single sink")
    {
        CHECK(dag_sequential(graph_from(1, {}), tt({{0}}, 1)).ell == std::vector<std::uint32_t>{1});
        CHECK(dag_sequential(graph_from(1, {}), tt({{}, {}}, 1)).ell == std::vector<std::uint32_t>{3});
    }
    SUBCASE("a cycle is rejected")
    {
        try {
            dag_sequential(graph_from(2, {{0, 1}, {1, 0}}), tt({{0}}, 2));
            FAIL("expected NOT_A_DAG");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::not_a_dag);
        }
    }
    SUBCASE("labels do not depend on vertex numbering")
    {
        std::mt19937_64 rng(5);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto q = testing::random_query(Kind::graph, Objective::sequential, seed, 10, 4);
            const auto c = condense_with_targets(q.arena, q.targets);
            const auto n = c.dag.size();
            std::vector<Vertex> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Edge> edges;
            for (const auto& [u, v] : c.dag.edges()) edges.emplace_back(perm[u], perm[v]);
            std::vector<VertexSet> sets;
            for (const auto& t : c.targets.sets) {
                VertexSet s;
                for (const Vertex v : t) s.push_back(perm[v]);
                sets.push_back(s);
            }
            const auto a = dag_sequential(c.dag, c.targets);
            const auto b = dag_sequential(graph_from(n, edges), tt(sets, n));
            for (Vertex v = 0; v < n; ++v) CHECK(a.ell[v] == b.ell[perm[v]]);
        }
    }
    SUBCASE("invariants hold")
    {
        InvariantLog log;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto q = testing::random_query(Kind::graph, Objective::sequential, seed, 8, 3);
            const auto c = condense_with_targets(q.arena, q.targets);
            dag_sequential(c.dag, c.targets, {.invariants = &log});
        }
        CHECK(log.checks > 0);
        CHECK(log.violations == 0);
    }
}

TEST_CASE("graph_sequential")
{
    SUBCASE("cycle visits in either order")
    {
        Query q;
        q.arena = graph_from(3, {{0, 1}, {1, 2}, {2, 0}});
        q.objective = Objective::sequential;
        q.targets = tt({{2}, {1}}, 3);
        CHECK(graph_sequential(q).winning);
        CHECK(graph_sequential(q).winning_set == VertexSet{0, 1, 2});
    }
    SUBCASE("order matters on a chain")
    {
        Query q;
        q.arena = graph_from(3, {{0, 1}, {1, 2}, {2, 2}});
        q.objective = Objective::sequential;
        q.targets = tt({{1}, {2}}, 3);
        CHECK(graph_sequential(q).winning);
        q.targets = tt({{2}, {1}}, 3);
        CHECK_FALSE(graph_sequential(q).winning);
    }
    SUBCASE("three-vertex example")
    {
        auto q = testing::three_vertex_query(Kind::graph, Objective::sequential, {{1}, {2}});
        CHECK(graph_sequential(q).winning);
        q = testing::three_vertex_query(Kind::graph, Objective::sequential, {{2}, {0}});
        CHECK_FALSE(graph_sequential(q).winning);
    }
    SUBCASE("empty tuple is won everywhere")
    {
        const auto q = testing::three_vertex_query(Kind::graph, Objective::sequential, {});
        CHECK(graph_sequential(q).winning_set == VertexSet{0, 1, 2});
    }
    SUBCASE("labels match the product oracle")
    {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto q = testing::random_query(Kind::graph, Objective::sequential, seed, 10, 4);
            const auto r = graph_sequential(q);
            CHECK(r.labels == oracle::graph_sequential_labels(q.arena, q.targets));
            CHECK(r.winning_set == oracle::graph_sequential(q));
        }
    }
    SUBCASE("work is linear in m plus total target size")
    {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            GenParams p{.kind = Kind::graph, .objective = Objective::sequential, .n = 200, .m = 800, .k = 8,
                        .target_density = 0.1, .seed = seed};
            const auto q = gen_random(p);
            WorkCounters w;
            graph_sequential(q, {.counters = &w});
            CHECK(w.edges + w.aux() <= 4 * (q.arena.edge_count() + q.targets.total_size()));
        }
    }
}
