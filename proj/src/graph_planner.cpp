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

#include "reachplan/graph_planner.hpp"

#include <algorithm>
#include <limits>

#include "stage_labels.hpp"

namespace reachplan {

void InvariantLog::record(bool ok, const char* what)
{
    ++checks;
    if (ok) return;
    ++violations;
    if (messages.size() < 16) messages.emplace_back(what);
}

VertexSet Labeling::winners() const
{
    VertexSet result;
    for (Vertex v = 0; v < ell.size(); ++v) {
        if (ell[v] == 1) result.push_back(v);
    }
    return result;
}

SccPartition scc_decompose(const Arena& arena, WorkCounters* counters, const std::vector<std::uint8_t>& active)
{
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    const auto n = static_cast<Vertex>(arena.size());
    auto is_active = [&](Vertex v) { return active.empty() || active[v] != 0; };

    SccPartition result;
    result.comp_of.assign(n, unvisited);
    std::vector<std::uint32_t> index(n, unvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<Vertex> stack;
    // explicit DFS frames: (vertex, position in its successor list)
    std::vector<std::pair<Vertex, std::uint32_t>> frames;
    std::uint32_t next_index = 0;
    std::uint64_t edges = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (!is_active(root) || index[root] != unvisited) continue;
        frames.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            const auto succ = arena.out(v);
            if (pos < succ.size()) {
                const Vertex w = succ[pos++];
                ++edges;
                if (!is_active(w)) continue;
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const Vertex done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const Vertex parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                const auto id = static_cast<std::uint32_t>(result.comps.size());
                VertexSet comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.comp_of[w] = id;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                result.comps.push_back(std::move(comp));
                result.topo_order.push_back(id);
            }
        }
    }
    if (counters) counters->edges += edges;
    return result;
}

VertexSet reachable_from(const Arena& arena, Vertex source, WorkCounters* counters)
{
    std::vector<std::uint8_t> seen(arena.size(), 0);
    std::vector<Vertex> queue{source};
    seen[source] = 1;
    std::uint64_t edges = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Vertex w : arena.out(queue[head])) {
            ++edges;
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    if (counters) counters->edges += edges;
    std::sort(queue.begin(), queue.end());
    return queue;
}

CoverageResult graph_coverage(const Query& query, const SolveOptions& options)
{
    std::vector<std::uint8_t> seen(query.arena.size(), 0);
    for (Vertex v : reachable_from(query.arena, query.start, options.counters)) seen[v] = 1;

    CoverageResult result;
    result.winning = true;
    for (const auto& set : query.targets.sets) {
        bool hit = false;
        for (Vertex v : set) {
            if (options.counters) ++options.counters->target_entries;
            if (seen[v]) {
                hit = true;
                break;
            }
        }
        result.per_target.push_back(hit);
        result.winning = result.winning && hit;
    }
    return result;
}

Condensation condense_with_targets(const Arena& arena, const TargetTuple& targets, WorkCounters* counters)
{
    auto scc = scc_decompose(arena, counters);
    const auto c = scc.comps.size();

    std::vector<Edge> edges;
    for (Vertex u = 0; u < arena.size(); ++u) {
        for (Vertex v : arena.out(u)) {
            if (scc.comp_of[u] != scc.comp_of[v]) edges.emplace_back(scc.comp_of[u], scc.comp_of[v]);
        }
    }
    if (counters) counters->edges += arena.edge_count();

    Condensation result;
    result.dag = Arena::build(Kind::graph, std::vector<Owner>(c, Owner::p1), edges);
    std::vector<VertexSet> mapped;
    mapped.reserve(targets.k());
    for (const auto& set : targets.sets) {
        VertexSet m;
        m.reserve(set.size());
        for (Vertex v : set) m.push_back(scc.comp_of[v]);
        mapped.push_back(make_vertex_set(std::move(m)));
    }
    if (counters) counters->target_entries += targets.total_size();
    result.targets.sets = std::move(mapped);
    result.comp_of = std::move(scc.comp_of);
    return result;
}

namespace {

struct PropagationState {
    std::vector<std::uint32_t> mcount;
    std::vector<std::uint32_t> best;
    std::vector<std::uint32_t> ell;
    std::vector<std::uint8_t> in_s;
    std::vector<std::uint8_t> queued;
    std::size_t queue_size = 0;
    std::size_t s_size = 0;
};

void check_backward_invariants(const Arena& dag, std::uint32_t k, const PropagationState& st,
                               const detail::StageScratch& scratch, InvariantLog& log)
{
    bool counters_ok = true, queue_ok = true, sinks_ok = true, best_ok = true;
    for (Vertex v = 0; v < dag.size(); ++v) {
        std::uint32_t unprocessed = 0;
        std::uint32_t expected_best = detail::nil;
        for (Vertex w : dag.out(v)) {
            if (st.in_s[w]) {
                ++unprocessed;
            } else {
                if (st.ell[w] == detail::nil) best_ok = false;
                expected_best = expected_best == detail::nil ? st.ell[w] : std::min(expected_best, st.ell[w]);
            }
        }
        counters_ok = counters_ok && st.mcount[v] == unprocessed;
        queue_ok = queue_ok && (st.queued[v] != 0) == (st.in_s[v] && unprocessed == 0);
        if (dag.out(v).empty()) {
            sinks_ok = sinks_ok && st.best[v] == k + 1;
        } else {
            best_ok = best_ok && st.best[v] == expected_best;
        }
    }
    log.record(counters_ok, "backward propagation: mcount_v != |Out(v) & S|");
    log.record(queue_ok, "backward propagation: queue membership mismatch");
    log.record(st.s_size == 0 || st.queue_size > 0, "backward propagation: S non-empty but queue empty");
    log.record(sinks_ok, "backward propagation: sink best != k+1");
    log.record(best_ok, "backward propagation: best_v != min over processed successors");
    log.record(scratch.clean(), "backward propagation: scratch bitmap not clear");
}

}  // namespace

Labeling dag_sequential(const Arena& dag, const TargetTuple& targets, const SolveOptions& options)
{
    const auto n = static_cast<Vertex>(dag.size());
    const auto k = static_cast<std::uint32_t>(targets.k());
    auto* counters = options.counters;

    const detail::StageMembership stages(n, targets, counters);
    detail::StageScratch scratch(k);

    PropagationState st;
    st.mcount.resize(n);
    st.best.assign(n, detail::nil);
    st.ell.assign(n, detail::nil);
    st.in_s.assign(n, 1);
    st.queued.assign(n, 0);
    st.s_size = n;

    std::vector<Vertex> queue;
    queue.reserve(n);
    std::size_t head = 0;
    for (Vertex v = 0; v < n; ++v) {
        st.mcount[v] = static_cast<std::uint32_t>(dag.out(v).size());
        if (st.mcount[v] == 0) {
            st.best[v] = k + 1;
            queue.push_back(v);
            st.queued[v] = 1;
        }
    }
    st.queue_size = queue.size();

    while (st.s_size > 0) {
        if (options.invariants) check_backward_invariants(dag, k, st, scratch, *options.invariants);
        if (head == queue.size()) {
            throw Error(ErrorCode::not_a_dag, "backward propagation stalled with " + std::to_string(st.s_size) +
                                                  " unprocessed vertices: input has a cycle");
        }
        const Vertex v = queue[head++];
        st.queued[v] = 0;
        --st.queue_size;

        st.ell[v] = scratch.label(st.best[v], stages.of(v), counters);
        st.in_s[v] = 0;
        --st.s_size;
        for (Vertex w : dag.in(v)) {
            st.best[w] = st.best[w] == detail::nil ? st.ell[v] : std::min(st.best[w], st.ell[v]);
            if (--st.mcount[w] == 0 && st.in_s[w]) {
                queue.push_back(w);
                st.queued[w] = 1;
                ++st.queue_size;
            }
        }
        if (counters) counters->edges += dag.in(v).size();
    }
    if (options.invariants) check_backward_invariants(dag, k, st, scratch, *options.invariants);

    return Labeling{std::move(st.ell), k};
}

SequentialResult graph_sequential(const Query& query, const SolveOptions& options)
{
    const auto cond = condense_with_targets(query.arena, query.targets, options.counters);
    const auto labels = dag_sequential(cond.dag, cond.targets, options);

    SequentialResult result;
    result.labels.resize(query.arena.size());
    for (Vertex v = 0; v < query.arena.size(); ++v) {
        result.labels[v] = labels.ell[cond.comp_of[v]];
        if (result.labels[v] == 1) result.winning_set.push_back(v);
    }
    result.winning = result.labels[query.start] == 1;
    return result;
}

}  // namespace reachplan
