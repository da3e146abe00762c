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

#include "reachplan/oracle.hpp"

#include <algorithm>

namespace reachplan::oracle {

namespace {

using Mask = std::vector<std::uint8_t>;

Mask to_mask(std::size_t n, const VertexSet& set)
{
    Mask m(n, 0);
    for (Vertex v : set) m[v] = 1;
    return m;
}

VertexSet from_mask(const Mask& m)
{
    VertexSet s;
    for (Vertex v = 0; v < m.size(); ++v) {
        if (m[v]) s.push_back(v);
    }
    return s;
}

Mask forward_from(const Arena& a, Vertex source)
{
    Mask seen(a.size(), 0);
    std::vector<Vertex> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : a.out(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

/// Naive fixpoint: existential vertices need one successor inside,
/// universal ones need all. Sweeps until nothing changes.
Mask sweep_attractor(const Arena& a, Mask set, bool (*universal)(Owner))
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v = 0; v < a.size(); ++v) {
            if (set[v]) continue;
            const auto succ = a.out(v);
            bool joins;
            if (universal(a.owner(v))) {
                joins = !succ.empty() && std::all_of(succ.begin(), succ.end(), [&](Vertex w) { return set[w] != 0; });
            } else {
                joins = std::any_of(succ.begin(), succ.end(), [&](Vertex w) { return set[w] != 0; });
            }
            if (joins) {
                set[v] = 1;
                changed = true;
            }
        }
    }
    return set;
}

std::vector<std::uint32_t> labels_from_product(const Product& p, std::size_t n, const Mask& winning)
{
    std::vector<std::uint32_t> labels(n, p.k + 1);
    for (Vertex v = 0; v < n; ++v) {
        for (std::uint32_t i = 1; i <= p.k + 1; ++i) {
            if (winning[p.state(v, i)]) {
                labels[v] = i;
                break;
            }
        }
    }
    return labels;
}

VertexSet stage_one_winners(const Product& p, std::size_t n, const Mask& winning)
{
    VertexSet s;
    for (Vertex v = 0; v < n; ++v) {
        if (winning[p.state(v, 1)]) s.push_back(v);
    }
    return s;
}

Mask graph_product_winning(const Product& p)
{
    const auto states = p.arena.size();
    Mask winning(states, 0);
    for (Vertex x = 0; x < states; ++x) {
        const auto seen = forward_from(p.arena, x);
        for (Vertex y = 0; y < states; ++y) {
            if (seen[y] && p.accepting[y]) {
                winning[x] = 1;
                break;
            }
        }
    }
    return winning;
}

Mask game_product_winning(const Product& p)
{
    return sweep_attractor(p.arena, p.accepting, [](Owner o) { return o == Owner::p2; });
}

Mask mdp_product_winning(const Product& p)
{
    return to_mask(p.arena.size(), as_reach_fixpoint(p.arena, from_mask(p.accepting)));
}

}  // namespace

Product product_expand(const Arena& arena, const TargetTuple& targets)
{
    const auto n = arena.size();
    const auto k = static_cast<std::uint32_t>(targets.k());
    std::vector<Mask> member;
    for (const auto& set : targets.sets) member.push_back(to_mask(n, set));

    Product p;
    p.k = k;
    const auto states = n * (k + 1);
    std::vector<Owner> owners(states);
    p.accepting.assign(states, 0);
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
        for (std::uint32_t i = 1; i <= k + 1; ++i) {
            const Vertex x = p.state(v, i);
            owners[x] = arena.owner(v);
            std::uint32_t j = i;
            while (j <= k && member[j - 1][v]) ++j;
            if (j == k + 1) p.accepting[x] = 1;
            for (Vertex w : arena.out(v)) edges.emplace_back(x, p.state(w, j));
        }
    }
    p.arena = Arena::build(arena.kind(), std::move(owners), edges);
    return p;
}

std::vector<std::uint32_t> graph_sequential_labels(const Arena& graph, const TargetTuple& targets)
{
    const auto p = product_expand(graph, targets);
    return labels_from_product(p, graph.size(), graph_product_winning(p));
}

std::vector<std::uint32_t> mdp_sequential_labels(const Arena& mdp, const TargetTuple& targets)
{
    const auto p = product_expand(mdp, targets);
    return labels_from_product(p, mdp.size(), mdp_product_winning(p));
}

VertexSet graph_sequential(const Query& q)
{
    const auto p = product_expand(q.arena, q.targets);
    return stage_one_winners(p, q.arena.size(), graph_product_winning(p));
}

VertexSet game_sequential(const Query& q)
{
    const auto p = product_expand(q.arena, q.targets);
    return stage_one_winners(p, q.arena.size(), game_product_winning(p));
}

VertexSet mdp_sequential(const Query& q)
{
    const auto p = product_expand(q.arena, q.targets);
    return stage_one_winners(p, q.arena.size(), mdp_product_winning(p));
}

VertexSet graph_reach(const Arena& graph, const VertexSet& target)
{
    const auto in_target = to_mask(graph.size(), target);
    VertexSet result;
    for (Vertex v = 0; v < graph.size(); ++v) {
        const auto seen = forward_from(graph, v);
        for (Vertex w = 0; w < graph.size(); ++w) {
            if (seen[w] && in_target[w]) {
                result.push_back(v);
                break;
            }
        }
    }
    return result;
}

VertexSet game_attractor(const Arena& game, const VertexSet& target)
{
    return from_mask(sweep_attractor(game, to_mask(game.size(), target), [](Owner o) { return o == Owner::p2; }));
}

VertexSet reach_region(const Arena& arena, const VertexSet& target)
{
    switch (arena.kind()) {
    case Kind::graph: return graph_reach(arena, target);
    case Kind::game: return game_attractor(arena, target);
    case Kind::mdp: return as_reach_fixpoint(arena, target);
    }
    return {};
}

VertexSet as_reach_fixpoint(const Arena& mdp, const VertexSet& target)
{
    const auto n = mdp.size();
    const auto in_target = to_mask(n, target);
    Mask alive(n, 1);
    for (;;) {
        // vertices of the current region with a path to the target inside it
        Mask reaches(n, 0);
        for (Vertex v = 0; v < n; ++v) reaches[v] = alive[v] && in_target[v];
        bool grew = true;
        while (grew) {
            grew = false;
            for (Vertex v = 0; v < n; ++v) {
                if (!alive[v] || reaches[v]) continue;
                for (Vertex w : mdp.out(v)) {
                    if (alive[w] && reaches[w]) {
                        reaches[v] = 1;
                        grew = true;
                        break;
                    }
                }
            }
        }
        Mask doomed(n, 0);
        bool any = false;
        for (Vertex v = 0; v < n; ++v) {
            if (alive[v] && !reaches[v]) {
                doomed[v] = 1;
                any = true;
            }
        }
        if (!any) return from_mask(alive);

        // random attractor of the doomed vertices, restricted to the region
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < n; ++v) {
                // a target vertex has already been reached
                if (!alive[v] || doomed[v] || in_target[v]) continue;
                bool joins;
                if (mdp.owner(v) == Owner::random) {
                    joins = false;
                    for (Vertex w : mdp.out(v)) joins = joins || (alive[w] && doomed[w]);
                } else {
                    joins = true;
                    for (Vertex w : mdp.out(v)) {
                        if (alive[w] && !doomed[w]) joins = false;
                    }
                }
                if (joins) {
                    doomed[v] = 1;
                    changed = true;
                }
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (doomed[v]) alive[v] = 0;
        }
    }
}

VertexSet as_reach_by_strategy_enumeration(const Arena& mdp, const VertexSet& target, std::uint64_t max_strategies)
{
    const auto n = mdp.size();
    const auto in_target = to_mask(n, target);
    std::vector<Vertex> choosers;
    std::uint64_t total = 1;
    for (Vertex v = 0; v < n; ++v) {
        if (mdp.owner(v) != Owner::random && !in_target[v] && mdp.out(v).size() > 1) {
            choosers.push_back(v);
            total *= mdp.out(v).size();
            if (total > max_strategies) {
                throw Error(ErrorCode::range, "too many memoryless strategies to enumerate");
            }
        }
    }

    Mask winning(n, 0);
    std::vector<std::size_t> choice(n, 0);
    for (std::uint64_t s = 0; s < total; ++s) {
        // decode s as a mixed-radix number over the choosers
        auto rest = s;
        for (Vertex v : choosers) {
            choice[v] = rest % mdp.out(v).size();
            rest /= mdp.out(v).size();
        }
        // induced chain with the target absorbing
        std::vector<std::vector<Vertex>> chain(n);
        for (Vertex v = 0; v < n; ++v) {
            if (in_target[v]) {
                chain[v] = {v};
            } else if (mdp.owner(v) == Owner::random) {
                chain[v].assign(mdp.out(v).begin(), mdp.out(v).end());
            } else if (!mdp.out(v).empty()) {
                chain[v] = {mdp.out(v)[choice[v]]};
            }
        }
        std::vector<Mask> reach(n, Mask(n, 0));
        for (Vertex v = 0; v < n; ++v) {
            std::vector<Vertex> stack{v};
            reach[v][v] = 1;
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                for (Vertex y : chain[x]) {
                    if (!reach[v][y]) {
                        reach[v][y] = 1;
                        stack.push_back(y);
                    }
                }
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (winning[v]) continue;
            bool ok = true;
            for (Vertex u = 0; u < n && ok; ++u) {
                if (!reach[v][u]) continue;
                // u lies in a bottom SCC iff everything it reaches reaches it back
                bool bottom = true;
                for (Vertex w = 0; w < n && bottom; ++w) {
                    if (reach[u][w] && !reach[w][u]) bottom = false;
                }
                if (bottom && !in_target[u]) ok = false;
            }
            if (ok) winning[v] = 1;
        }
    }
    return from_mask(winning);
}

std::vector<std::vector<std::uint8_t>> closure(const Arena& arena)
{
    std::vector<Mask> result;
    result.reserve(arena.size());
    for (Vertex v = 0; v < arena.size(); ++v) result.push_back(forward_from(arena, v));
    return result;
}

std::vector<VertexSet> scc_by_closure(const Arena& arena)
{
    const auto n = arena.size();
    const auto reach = closure(arena);
    Mask placed(n, 0);
    std::vector<VertexSet> comps;
    for (Vertex v = 0; v < n; ++v) {
        if (placed[v]) continue;
        VertexSet comp;
        for (Vertex u = 0; u < n; ++u) {
            if (reach[v][u] && reach[u][v]) {
                comp.push_back(u);
                placed[u] = 1;
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<VertexSet> mecs_by_enumeration(const Arena& mdp)
{
    const auto n = mdp.size();
    if (n > 20) throw Error(ErrorCode::range, "subset enumeration limited to 20 vertices");

    auto in_subset = [](std::uint32_t mask, Vertex v) { return (mask >> v) & 1u; };
    auto reach_within = [&](std::uint32_t mask, Vertex from, bool forward) {
        std::uint32_t seen = 1u << from;
        std::vector<Vertex> stack{from};
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : forward ? mdp.out(x) : mdp.in(x)) {
                if (in_subset(mask, y) && !in_subset(seen, y)) {
                    seen |= 1u << y;
                    stack.push_back(y);
                }
            }
        }
        return seen;
    };

    std::vector<std::uint32_t> ecs;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool closed = true;
        bool internal_edge = false;
        Vertex first = 0;
        while (!in_subset(mask, first)) ++first;
        for (Vertex v = 0; v < n && closed; ++v) {
            if (!in_subset(mask, v)) continue;
            for (Vertex w : mdp.out(v)) {
                if (in_subset(mask, w)) {
                    internal_edge = true;
                } else if (mdp.owner(v) == Owner::random) {
                    closed = false;
                }
            }
        }
        if (!closed || !internal_edge) continue;
        if (reach_within(mask, first, true) != mask || reach_within(mask, first, false) != mask) continue;
        ecs.push_back(mask);
    }

    std::vector<VertexSet> result;
    for (auto mask : ecs) {
        const bool maximal = std::none_of(ecs.begin(), ecs.end(), [&](std::uint32_t other) {
            return other != mask && (other & mask) == mask;
        });
        if (!maximal) continue;
        VertexSet set;
        for (Vertex v = 0; v < n; ++v) {
            if (in_subset(mask, v)) set.push_back(v);
        }
        result.push_back(std::move(set));
    }
    std::sort(result.begin(), result.end());
    return result;
}

bool ov_bruteforce(const std::vector<BitVector>& s1, const std::vector<BitVector>& s2)
{
    for (const auto& x : s1) {
        for (const auto& y : s2) {
            if (x.size() != y.size()) throw Error(ErrorCode::dimension, "vector dimensions differ");
            bool orthogonal = true;
            for (std::size_t i = 0; i < x.size() && orthogonal; ++i) {
                if (x[i] && y[i]) orthogonal = false;
            }
            if (orthogonal) return true;
        }
    }
    return false;
}

bool triangle_bruteforce(const Arena& graph)
{
    for (Vertex x = 0; x < graph.size(); ++x) {
        for (Vertex y : graph.out(x)) {
            if (y == x) continue;
            for (Vertex z : graph.out(y)) {
                if (z == y || z == x) continue;
                const auto back = graph.out(z);
                if (std::binary_search(back.begin(), back.end(), x)) return true;
            }
        }
    }
    return false;
}

bool triangle_by_triples(const Arena& graph)
{
    const auto n = graph.size();
    std::vector<Mask> adj(n, Mask(n, 0));
    for (const auto& [u, v] : graph.edges()) adj[u][v] = 1;
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = 0; y < n; ++y) {
            for (Vertex z = 0; z < n; ++z) {
                if (x != y && y != z && z != x && adj[x][y] && adj[y][z] && adj[z][x]) return true;
            }
        }
    }
    return false;
}

}  // namespace reachplan::oracle
