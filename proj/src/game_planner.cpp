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

#include "reachplan/game_planner.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace reachplan {

AttractorResult attractor_p1(const Arena& game, const VertexSet& target, WorkCounters* counters)
{
    const auto n = game.size();
    AttractorResult result;
    result.strategy.assign(n, no_vertex);
    result.rank.assign(n, no_rank);

    // remaining[v]: successors of a player-2 vertex not yet attracted
    std::vector<std::uint32_t> remaining(n, 0);
    std::vector<std::uint8_t> started(n, 0);
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (Vertex t : target) {
        result.rank[t] = 0;
        queue.push_back(t);
    }
    std::uint64_t edges = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        for (Vertex u : game.in(v)) {
            ++edges;
            if (result.rank[u] != no_rank) continue;
            if (game.owner(u) == Owner::p2) {
                if (!started[u]) {
                    remaining[u] = static_cast<std::uint32_t>(game.out(u).size());
                    started[u] = 1;
                }
                if (--remaining[u] != 0) continue;
            } else {
                result.strategy[u] = v;
            }
            result.rank[u] = result.rank[v] + 1;
            queue.push_back(u);
        }
    }
    if (counters) counters->edges += edges;
    std::sort(queue.begin(), queue.end());
    result.set = std::move(queue);
    return result;
}

CoverageResult game_coverage(const Query& query, const SolveOptions& options)
{
    const auto n = query.arena.size();
    std::vector<std::uint32_t> wins(n, 0);
    CoverageResult result;
    result.winning = true;
    for (const auto& set : query.targets.sets) {
        if (options.counters) options.counters->target_entries += set.size();
        const auto attr = attractor_p1(query.arena, set, options.counters);
        for (Vertex v : attr.set) ++wins[v];
        const bool hit = attr.rank[query.start] != no_rank;
        result.per_target.push_back(hit);
        result.winning = result.winning && hit;
    }
    VertexSet all;
    for (Vertex v = 0; v < n; ++v) {
        if (wins[v] == query.targets.k()) all.push_back(v);
    }
    result.winning_set = std::move(all);
    return result;
}

GameSequentialResult game_sequential(const Query& query, const SolveOptions& options)
{
    const auto& game = query.arena;
    const auto k = query.targets.k();
    GameSequentialResult result;
    result.stages.resize(k);

    VertexSet next;  // S_{l+1}
    for (std::size_t l = k; l-- > 0;) {
        const auto& t = query.targets.sets[l];
        if (options.counters) options.counters->target_entries += t.size() + next.size();
        VertexSet base;
        if (l + 1 == k) {
            base = t;
        } else {
            std::set_intersection(t.begin(), t.end(), next.begin(), next.end(), std::back_inserter(base));
        }
        result.stages[l] = attractor_p1(game, base, options.counters);
        next = result.stages[l].set;
    }

    if (k == 0) {
        next.resize(game.size());
        for (Vertex v = 0; v < game.size(); ++v) next[v] = v;
    }
    result.winning_set = std::move(next);
    result.winning = contains(result.winning_set, query.start);
    return result;
}

std::string format_strategy(const GameSequentialResult& result)
{
    std::ostringstream os;
    for (std::size_t l = 0; l < result.stages.size(); ++l) {
        const auto& stage = result.stages[l];
        for (Vertex v : stage.set) {
            if (stage.strategy[v] != no_vertex) {
                os << "stage " << l + 1 << " vertex " << v << " choose " << stage.strategy[v] << '\n';
            }
        }
    }
    return os.str();
}

std::uint32_t play_staged_strategy(const Arena& game, const TargetTuple& targets, const GameSequentialResult& result,
                                   Vertex start, const Adversary& adversary, std::size_t max_steps,
                                   std::vector<Vertex>* trace)
{
    const auto k = static_cast<std::uint32_t>(targets.k());
    std::uint32_t stage = 0;  // number of completed stages
    auto advance = [&](Vertex v) {
        // a vertex may close several consecutive stages at once
        while (stage < k && contains(targets.sets[stage], v) &&
               (stage + 1 == k || result.stages[stage + 1].rank[v] != no_rank)) {
            ++stage;
        }
    };

    Vertex v = start;
    if (trace) trace->push_back(v);
    advance(v);
    for (std::size_t step = 0; step < max_steps && stage < k; ++step) {
        Vertex w;
        if (game.owner(v) == Owner::p2) {
            w = adversary(v, game.out(v));
        } else {
            w = result.stages[stage].strategy[v];
            if (w == no_vertex) break;
        }
        v = w;
        if (trace) trace->push_back(v);
        advance(v);
    }
    return stage;
}

}  // namespace reachplan
