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

#include <doctest.h>

#include "reachplan/reductions.hpp"
#include "support.hpp"

using namespace reachplan;

namespace {

const OvInstance example{{{1, 0}, {0, 1}}, {{1, 1}, {1, 0}}};

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::io;
}

std::vector<bool> step(const Arena& a, const std::vector<bool>& from)
{
    std::vector<bool> to(a.size(), false);
    for (Vertex v = 0; v < a.size(); ++v) {
        if (!from[v]) continue;
        for (const Vertex w : a.out(v)) to[w] = true;
    }
    return to;
}

}  // namespace

TEST_CASE("OV reduction layout and sizes")
{
    const std::size_t count = 2, d = 2;
    const auto mdp = reduce_ov_mdp(example);
    const auto& a = mdp.query.arena;
    CHECK(a.size() == 1 + 2 * count + d);
    CHECK(a.kind() == Kind::mdp);
    CHECK(a.owner(0) == Owner::random);
    CHECK(a.has_edge(0, 1));
    CHECK(a.has_edge(1, 1 + count + 0));          // x_0 -> c_0
    CHECK(a.has_edge(1 + count + 0, 1 + count + d + 0));  // c_0 -> y_0
    CHECK(mdp.query.targets.sets == std::vector<VertexSet>{{5}, {6}});
    CHECK(mdp.query.objective == Objective::coverage);
    // bits: 2 + 3 ones, N edges from s, one self-loop per y
    CHECK(a.edge_count() == count + 2 + 3 + count);
    CHECK_FALSE(mdp.truth);

    const auto game = reduce_ov_game(example);
    CHECK(game.query.arena.owner(0) == Owner::p2);
    CHECK(game.query.arena.edges() == a.edges());

    const auto seq = reduce_ov_game_seq(example);
    CHECK(seq.query.objective == Objective::sequential);
    CHECK(seq.query.arena.edge_count() == count + 2 + 3 + count);
    CHECK(seq.query.arena.has_edge(5, 0));
}

TEST_CASE("OV truth follows the brute force")
{
    const OvInstance none{{{1, 1}}, {{1, 0}}};
    CHECK(reduce_ov_mdp(none).truth);
    CHECK(reduce_ov_game(none).truth);
    CHECK_FALSE(reduce_ov_game_seq(example).truth);
}

TEST_CASE("sequential OV game returns to s every four moves")
{
    const auto a = reduce_ov_game_seq(example).query.arena;
    std::vector<bool> at(a.size(), false);
    at[0] = true;
    for (int i = 1; i <= 3; ++i) {
        at = step(a, at);
        CHECK_FALSE(at[0]);
    }
    at = step(a, at);
    for (Vertex v = 0; v < a.size(); ++v) CHECK(at[v] == (v == 0));
}

TEST_CASE("OV input errors")
{
    CHECK(code_of([] { reduce_ov_mdp({{{1, 0}}, {{1}}}); }) == ErrorCode::dimension);
    CHECK(code_of([] { reduce_ov_mdp({{}, {}}); }) == ErrorCode::dimension);
    CHECK(code_of([] { reduce_ov_mdp({{{1}}, {{1}, {0}}}); }) == ErrorCode::dimension);
}

TEST_CASE("triangle reduction layout and sizes")
{
    const auto g = bidirected_triangle();
    const std::size_t n = 3, m = 6;
    const auto r = reduce_triangle_mdp(g);
    const auto& a = r.query.arena;
    CHECK(a.size() == 4 * n + 1);
    CHECK(a.edge_count() == n + 3 * m + n);  // layer-4 copies get self-loops
    CHECK(a.has_edge(0, 1));
    CHECK(a.has_edge(1 + 0, 1 + n + 1));    // v_{1,0} -> v_{2,1}
    CHECK(r.query.targets.k() == n);
    CHECK(r.query.targets.sets[0] == VertexSet{2, 3, 11, 12});
    for (Vertex v = 0; v < a.size(); ++v) CHECK(a.owner(v) == Owner::random);
    CHECK_FALSE(r.truth);

    const auto seq = reduce_triangle_game_seq(g);
    CHECK(seq.query.arena.edge_count() == n + 3 * m + n);
    CHECK(seq.query.arena.has_edge(1 + 3 * n, 0));
    CHECK(reduce_triangle_game(directed_cycle(4)).truth);
}

TEST_CASE("triangle input errors")
{
    CHECK(code_of([] { reduce_triangle_game(testing::graph_from(2, {{0, 0}, {0, 1}, {1, 0}})); }) ==
          ErrorCode::self_loop);
    CHECK(code_of([] { reduce_triangle_game(testing::graph_from(2, {{0, 1}})); }) == ErrorCode::sink);
}

TEST_CASE("random generators")
{
    SUBCASE("deterministic in the seed")
    {
        GenParams p{.kind = Kind::mdp, .objective = Objective::coverage, .n = 20, .m = 60, .k = 3, .seed = 42};
        CHECK(gen_random(p) == gen_random(p));
        auto other = p;
        other.seed = 43;
        CHECK_FALSE(gen_random(p) == gen_random(other));
        CHECK(serialize(reduce_ov_game(random_ov(8, 5, 0.4, 3)).query) ==
              serialize(reduce_ov_game(random_ov(8, 5, 0.4, 3)).query));
    }
    SUBCASE("exact edge count, no sinks, legal owners")
    {
        std::size_t random_owned = 0, total = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            GenParams p{.kind = Kind::mdp, .objective = Objective::sequential, .n = 30, .m = 90, .k = 2, .seed = seed};
            const auto q = gen_random(p);
            CHECK(q.arena.edge_count() == 90);
            CHECK(q.arena.sinks().empty());
            for (Vertex v = 0; v < q.arena.size(); ++v) {
                CHECK(owner_allowed(Kind::mdp, q.arena.owner(v)));
                random_owned += q.arena.owner(v) == Owner::random;
                ++total;
            }
        }
        const double share = static_cast<double>(random_owned) / static_cast<double>(total);
        CHECK(share > 0.45);
        CHECK(share < 0.55);
    }
    SUBCASE("infeasible parameters")
    {
        CHECK(code_of([] { gen_random({.n = 3, .m = 2}); }) == ErrorCode::infeasible);
        CHECK(code_of([] { gen_random({.n = 3, .m = 10}); }) == ErrorCode::infeasible);
        CHECK(code_of([] { gen_random({.objective = Objective::reach, .n = 3, .m = 3, .k = 2}); }) ==
              ErrorCode::infeasible);
    }
    SUBCASE("sink-free graphs without self-loops")
    {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto g = random_sink_free_graph(2 + seed % 15, 0.1, seed);
            CHECK(g.sinks().empty());
            for (Vertex v = 0; v < g.size(); ++v) CHECK_FALSE(g.has_edge(v, v));
        }
    }
}
