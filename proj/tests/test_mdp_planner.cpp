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

#include <doctest.h>

#include "reachplan/mdp_planner.hpp"
#include "reachplan/oracle.hpp"
#include "support.hpp"

using namespace reachplan;

namespace {

TargetTuple tt(std::vector<VertexSet> sets, std::size_t n) { return make_targets(std::move(sets), n); }

Arena mdp(std::vector<Owner> owners, const std::vector<Edge>& edges)
{
    return Arena::build(Kind::mdp, std::move(owners), edges);
}

VertexSet naive_random_attractor(const Arena& a, const VertexSet& base, const VertexSet& within)
{
    std::vector<bool> in(a.size(), false), allowed(a.size(), false);
    for (const Vertex v : base) in[v] = true;
    for (const Vertex v : within) allowed[v] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v = 0; v < a.size(); ++v) {
            if (in[v] || !allowed[v]) continue;
            bool join;
            if (a.owner(v) == Owner::random) {
                join = std::any_of(a.out(v).begin(), a.out(v).end(), [&](Vertex w) { return in[w]; });
            } else {
                join = std::any_of(a.out(v).begin(), a.out(v).end(), [&](Vertex w) { return allowed[w]; }) &&
                       std::all_of(a.out(v).begin(), a.out(v).end(), [&](Vertex w) { return !allowed[w] || in[w]; });
            }
            if (join) in[v] = changed = true;
        }
    }
    VertexSet out;
    for (Vertex v = 0; v < a.size(); ++v) {
        if (in[v]) out.push_back(v);
    }
    return out;
}

std::vector<VertexSet> sorted_mecs(const Arena& a)
{
    auto m = mec_decompose(a).mecs;
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST_CASE("MEC decomposition")
{
    CHECK(sorted_mecs(testing::three_vertex(Kind::mdp)) == std::vector<VertexSet>{{2}});
    SUBCASE("strongly connected MDP is one MEC")
    {
        const auto a = mdp({Owner::random, Owner::p1, Owner::random}, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
        CHECK(sorted_mecs(a) == std::vector<VertexSet>{{0, 1, 2}});
    }
    SUBCASE("player-1 cycle survives a leaking random vertex")
    {
        const auto a = mdp({Owner::p1, Owner::p1, Owner::random, Owner::p1},
                           {{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 3}, {3, 3}});
        CHECK(sorted_mecs(a) == std::vector<VertexSet>{{0, 1}, {3}});
    }
    SUBCASE("agrees with subset enumeration")
    {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto q = testing::random_query(Kind::mdp, Objective::reach, seed);
            const auto d = mec_decompose(q.arena);
            auto mecs = d.mecs;
            std::sort(mecs.begin(), mecs.end());
            CHECK(mecs == oracle::mecs_by_enumeration(q.arena));
            for (std::uint32_t i = 0; i < d.mecs.size(); ++i) {
                for (const Vertex v : d.mecs[i]) CHECK(d.mec_of[v] == i);
            }
        }
    }
}

TEST_CASE("random attractor")
{
    const auto a = testing::three_vertex(Kind::mdp);
    const VertexSet all{0, 1, 2};
    CHECK(random_attractor(a, {}, all).empty());
    CHECK(random_attractor(a, {2}, all) == VertexSet{0, 1, 2});
    CHECK(random_attractor(a, {2}, {1, 2}) == VertexSet{1, 2});
    const auto chain = mdp({Owner::p1, Owner::p1}, {{0, 1}, {1, 1}});
    CHECK(random_attractor(chain, {1}, {0, 1}) == VertexSet{0, 1});
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto q = testing::random_query(Kind::mdp, Objective::coverage, seed, 8, 2);
        if (q.targets.k() < 2) continue;
        VertexSet within = q.targets.sets[1];
        for (const Vertex v : q.targets.sets[0]) within.push_back(v);
        within = make_vertex_set(within);
        CHECK(random_attractor(q.arena, q.targets.sets[0], within) ==
              naive_random_attractor(q.arena, q.targets.sets[0], within));
        VertexSet everything(q.arena.size());
        std::iota(everything.begin(), everything.end(), 0);
        CHECK(random_attractor(q.arena, q.targets.sets[0], everything) ==
              naive_random_attractor(q.arena, q.targets.sets[0], everything));
    }
}

TEST_CASE("MEC quotient")
{
    SUBCASE("three-vertex example collapses the absorbing vertex to a sink")
    {
        const auto a = testing::three_vertex(Kind::mdp);
        const auto q = build_quotient(a, tt({{2}}, 3), mec_decompose(a));
        CHECK(q.arena.size() == 3);
        CHECK(q.arena.out(q.rep_of[2]).empty());
        CHECK(q.arena.owner(q.rep_of[2]) == Owner::p1);
        CHECK(q.targets.sets[0] == VertexSet{q.rep_of[2]});
    }
    SUBCASE("a MEC-free MDP is unchanged up to renaming")
    {
        const auto b = mdp({Owner::p1, Owner::random, Owner::p1}, {{0, 1}, {1, 2}, {1, 0}});
        CHECK(mec_decompose(b).mecs.empty());
        const auto q = build_quotient(b, {}, mec_decompose(b));
        CHECK(q.arena.size() == 3);
        CHECK(q.arena.edge_count() == 3);
    }
    SUBCASE("one big MEC becomes one sink carrying every target")
    {
        const auto a = mdp({Owner::random, Owner::p1}, {{0, 1}, {1, 0}, {0, 0}});
        const auto q = build_quotient(a, tt({{0}, {1}}, 2), mec_decompose(a));
        CHECK(q.arena.size() == 1);
        CHECK(q.arena.edge_count() == 0);
        CHECK(q.targets.sets == std::vector<VertexSet>{{0}, {0}});
    }
    SUBCASE("quotients are MEC-free")
    {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto rq = testing::random_query(Kind::mdp, Objective::sequential, seed, 10);
            const auto q = build_quotient(rq.arena, rq.targets, mec_decompose(rq.arena));
            const auto closed = normalize_sinks(q.arena);
            // After giving sinks a self-loop the only MECs are those sinks.
            for (const auto& m : oracle::mecs_by_enumeration(closed)) {
                CHECK(m.size() == 1);
                CHECK(q.arena.out(m.front()).empty());
            }
        }
    }
}

TEST_CASE("mecfree label propagation")
{
    SUBCASE("player 1 takes the minimum, random the maximum")
    {
        const std::vector<Edge> edges{{0, 1}, {0, 2}};
        const auto targets = tt({{}, {1}}, 3);
        auto p1 = mecfree_sequential(mdp({Owner::p1, Owner::p1, Owner::p1}, edges), targets);
        CHECK(p1.ell == std::vector<std::uint32_t>{2, 2, 3});
        auto rnd = mecfree_sequential(mdp({Owner::random, Owner::p1, Owner::p1}, edges), targets);
        CHECK(rnd.ell == std::vector<std::uint32_t>{3, 2, 3});
    }
    SUBCASE("quotient of the three-vertex example")
    {
        const auto a = testing::three_vertex(Kind::mdp);
        const auto q = build_quotient(a, tt({{2}}, 3), mec_decompose(a));
        const auto l = mecfree_sequential(q.arena, q.targets);
        for (const auto v : l.ell) CHECK(v == 1);
    }
    SUBCASE("a player-1 cycle is malformed input")
    {
        try {
            mecfree_sequential(mdp({Owner::p1, Owner::p1, Owner::p1}, {{0, 1}, {1, 0}, {1, 2}}), tt({{2}}, 3));
            FAIL("expected MALFORMED");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::malformed);
        }
    }
    SUBCASE("invariants hold on random quotients")
    {
        InvariantLog log;
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto rq = testing::random_query(Kind::mdp, Objective::sequential, seed);
            mdp_sequential(rq, {.invariants = &log});
        }
        CHECK(log.checks > 0);
        CHECK(log.violations == 0);
    }
}

TEST_CASE("MDP sequential reachability")
{
    SUBCASE("three-vertex example")
    {
        auto q = testing::three_vertex_query(Kind::mdp, Objective::sequential, {{1}, {2}});
        CHECK(mdp_sequential(q).winning);
        q = testing::three_vertex_query(Kind::mdp, Objective::sequential, {{2}, {0}});
        CHECK_FALSE(mdp_sequential(q).winning);
        q = testing::three_vertex_query(Kind::mdp, Objective::sequential, {});
        CHECK(mdp_sequential(q).winning_set == VertexSet{0, 1, 2});
    }
    SUBCASE("labels match the product oracle")
    {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const auto q = testing::random_query(Kind::mdp, Objective::sequential, seed);
            const auto r = mdp_sequential(q);
            CHECK(r.labels == oracle::mdp_sequential_labels(q.arena, q.targets));
            CHECK(r.winning_set == oracle::mdp_sequential(q));
        }
    }
    SUBCASE("suffix tuples shift labels up to the suffix start")
    {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            auto q = testing::random_query(Kind::mdp, Objective::sequential, seed, 8, 4);
            const auto k = q.targets.k();
            if (k < 2) continue;
            const auto full = mdp_sequential(q).labels;
            for (std::uint32_t j = 2; j <= k; ++j) {
                Query s = q;
                s.targets.sets.assign(q.targets.sets.begin() + (j - 1), q.targets.sets.end());
                const auto suffix = mdp_sequential(s).labels;
                for (Vertex v = 0; v < q.arena.size(); ++v) CHECK(suffix[v] + j - 1 == std::max(full[v], j));
            }
        }
    }
}

TEST_CASE("almost-sure reachability and coverage")
{
    const auto a = testing::three_vertex(Kind::mdp);
    CHECK(mdp_as_reach(a, {2}) == VertexSet{0, 1, 2});
    CHECK(mdp_as_reach(a, {0}) == VertexSet{0});
    CHECK(mdp_as_reach(a, {0, 1, 2}) == VertexSet{0, 1, 2});
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto q = testing::random_query(Kind::mdp, Objective::reach, seed);
        CHECK(mdp_as_reach(q.arena, q.targets.sets[0]) == oracle::as_reach_fixpoint(q.arena, q.targets.sets[0]));
    }

    const auto cov = testing::three_vertex_query(Kind::mdp, Objective::coverage, {{1}, {2}});
    const auto r = mdp_coverage(cov);
    CHECK(r.per_target == std::vector<bool>{true, true});
    CHECK(r.winning);

    const auto ov = reduce_ov_mdp({{{1, 0}, {0, 1}}, {{1, 1}, {1, 0}}});
    CHECK_FALSE(mdp_coverage(ov.query).winning);
    const auto tri = reduce_triangle_mdp(bidirected_triangle());
    CHECK_FALSE(mdp_coverage(tri.query).winning);
}
