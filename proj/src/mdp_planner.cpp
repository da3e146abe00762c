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

#include "reachplan/mdp_planner.hpp"

#include <algorithm>
#include <queue>

#include "stage_labels.hpp"

namespace reachplan {

namespace {

/// Backward random attractor restricted by a membership predicate. `mark`
/// must be all-zero on entry for vertices inside the region; the result
/// vertices are left marked. `count` is scratch indexed by vertex and is
/// only read after being initialized for that vertex.
template <class Within>
std::vector<Vertex> attract_random(const Arena& a, const std::vector<Vertex>& base, Within within,
                                   std::vector<std::uint8_t>& mark, std::vector<std::uint32_t>& count,
                                   std::vector<std::uint8_t>& count_ready, WorkCounters* counters)
{
    std::vector<Vertex> attr;
    std::vector<Vertex> touched;
    std::uint64_t edges = 0;
    for (Vertex b : base) {
        if (!mark[b]) {
            mark[b] = 1;
            attr.push_back(b);
        }
    }
    for (std::size_t head = 0; head < attr.size(); ++head) {
        const Vertex v = attr[head];
        for (Vertex u : a.in(v)) {
            ++edges;
            if (mark[u] || !within(u)) continue;
            if (a.owner(u) == Owner::random) {
                mark[u] = 1;
                attr.push_back(u);
                continue;
            }
            if (!count_ready[u]) {
                std::uint32_t inside = 0;
                for (Vertex w : a.out(u)) {
                    ++edges;
                    if (within(w)) ++inside;
                }
                count[u] = inside;
                count_ready[u] = 1;
                touched.push_back(u);
            }
            if (--count[u] == 0) {
                mark[u] = 1;
                attr.push_back(u);
            }
        }
    }
    for (Vertex u : touched) count_ready[u] = 0;
    if (counters) counters->edges += edges;
    return attr;
}

}  // namespace

VertexSet random_attractor(const Arena& mdp, const VertexSet& base, const VertexSet& within,
                           WorkCounters* counters)
{
    const auto n = mdp.size();
    std::vector<std::uint8_t> inside(n, 0), mark(n, 0), ready(n, 0);
    std::vector<std::uint32_t> count(n, 0);
    for (Vertex v : within) inside[v] = 1;
    for (Vertex b : base) {
        if (!inside[b]) throw Error(ErrorCode::range, "attractor base vertex " + std::to_string(b) + " not in region");
    }
    auto attr = attract_random(
        mdp, base, [&](Vertex v) { return inside[v] != 0; }, mark, count, ready, counters);
    return make_vertex_set(std::move(attr));
}

MecDecomposition mec_decompose(const Arena& mdp, WorkCounters* counters)
{
    const auto n = mdp.size();
    std::vector<std::uint8_t> active(n, 1), mark(n, 0), ready(n, 0);
    std::vector<std::uint32_t> count(n, 0);

    for (;;) {
        auto scc = scc_decompose(mdp, counters, active);
        bool removed = false;
        for (std::uint32_t c = 0; c < scc.comps.size(); ++c) {
            const auto& comp = scc.comps[c];
            if (comp.size() == 1 && !mdp.has_edge(comp[0], comp[0])) {
                active[comp[0]] = 0;
                removed = true;
                continue;
            }
            std::vector<Vertex> leaking;
            for (Vertex v : comp) {
                if (mdp.owner(v) != Owner::random) continue;
                for (Vertex w : mdp.out(v)) {
                    if (counters) ++counters->edges;
                    if (scc.comp_of[w] != c) {
                        leaking.push_back(v);
                        break;
                    }
                }
            }
            if (leaking.empty()) continue;
            const auto attr = attract_random(
                mdp, leaking, [&](Vertex v) { return scc.comp_of[v] == c; }, mark, count, ready, counters);
            for (Vertex v : attr) {
                active[v] = 0;
                mark[v] = 0;
            }
            removed = true;
        }
        if (!removed) {
            MecDecomposition result;
            result.mec_of.assign(n, MecDecomposition::none);
            for (auto& comp : scc.comps) {
                for (Vertex v : comp) result.mec_of[v] = static_cast<std::uint32_t>(result.mecs.size());
                result.mecs.push_back(std::move(comp));
            }
            return result;
        }
    }
}

QuotientMdp build_quotient(const Arena& mdp, const TargetTuple& targets, const MecDecomposition& mecs,
                           WorkCounters* counters)
{
    const auto n = mdp.size();
    QuotientMdp q;
    q.rep_of.assign(n, 0);
    std::vector<Vertex> mec_rep(mecs.mecs.size(), MecDecomposition::none);
    std::vector<Owner> owners;
    for (Vertex v = 0; v < n; ++v) {
        const auto id = mecs.mec_of[v];
        if (id == MecDecomposition::none) {
            q.rep_of[v] = static_cast<Vertex>(owners.size());
            owners.push_back(mdp.owner(v));
        } else {
            if (mec_rep[id] == MecDecomposition::none) {
                mec_rep[id] = static_cast<Vertex>(owners.size());
                owners.push_back(Owner::p1);
            }
            q.rep_of[v] = mec_rep[id];
        }
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : mdp.out(u)) {
            if (q.rep_of[u] != q.rep_of[v]) edges.emplace_back(q.rep_of[u], q.rep_of[v]);
        }
    }
    if (counters) counters->edges += mdp.edge_count();
    q.arena = Arena::build(Kind::mdp, std::move(owners), edges);
    q.targets = map_targets(q, targets, counters);
    return q;
}

TargetTuple map_targets(const QuotientMdp& quotient, const TargetTuple& targets, WorkCounters* counters)
{
    TargetTuple result;
    result.sets.reserve(targets.k());
    for (const auto& set : targets.sets) {
        VertexSet mapped;
        mapped.reserve(set.size());
        for (Vertex v : set) mapped.push_back(quotient.rep_of[v]);
        result.sets.push_back(make_vertex_set(std::move(mapped)));
    }
    if (counters) counters->target_entries += targets.total_size();
    return result;
}

namespace {

struct HeapEntry {
    std::uint32_t best;
    Vertex v;
};

struct HeapOrder {
    // max by best, then min by vertex index
    bool operator()(const HeapEntry& a, const HeapEntry& b) const
    {
        return a.best < b.best || (a.best == b.best && a.v > b.v);
    }
};

struct MecFreeState {
    std::vector<std::uint32_t> mcount;
    std::vector<std::uint32_t> best;
    std::vector<std::uint32_t> ell;
    std::vector<std::uint8_t> in_s;
    std::vector<std::uint8_t> queued;
    std::size_t queue_size = 0;
    std::size_t s_size = 0;
};

void check_mecfree_invariants(const Arena& a, std::uint32_t k, const MecFreeState& st,
                              const detail::StageScratch& scratch, InvariantLog& log)
{
    bool counters_ok = true, queue_ok = true, sinks_ok = true, best_ok = true;
    bool random_candidate = false;
    for (Vertex v = 0; v < a.size(); ++v) {
        const bool is_random = a.owner(v) == Owner::random;
        std::uint32_t unprocessed = 0;
        std::uint32_t expected = detail::nil;
        for (Vertex w : a.out(v)) {
            if (st.in_s[w]) {
                ++unprocessed;
                continue;
            }
            if (st.ell[w] == detail::nil) best_ok = false;
            if (expected == detail::nil) {
                expected = st.ell[w];
            } else {
                expected = is_random ? std::max(expected, st.ell[w]) : std::min(expected, st.ell[w]);
            }
        }
        counters_ok = counters_ok && st.mcount[v] == unprocessed;
        queue_ok = queue_ok && (st.queued[v] != 0) == (st.in_s[v] && unprocessed == 0);
        if (a.out(v).empty()) {
            sinks_ok = sinks_ok && st.best[v] == k + 1;
        } else {
            best_ok = best_ok && st.best[v] == expected;
        }
        if (is_random && st.in_s[v] && st.best[v] != detail::nil) random_candidate = true;
    }
    log.record(counters_ok, "mec-free propagation: mcount_v != |Out(v) & S|");
    log.record(queue_ok, "mec-free propagation: queue membership mismatch");
    log.record(sinks_ok, "mec-free propagation: sink best != k+1");
    log.record(best_ok, "mec-free propagation: best_v != min/max over processed successors");
    log.record(st.s_size == 0 || st.queue_size > 0 || random_candidate,
               "mec-free propagation: S non-empty, queue empty and no random candidate");
    log.record(scratch.clean(), "mec-free propagation: scratch bitmap not clear");
}

}  // namespace

Labeling mecfree_sequential(const Arena& a, const TargetTuple& targets, const SolveOptions& options)
{
    const auto n = static_cast<Vertex>(a.size());
    const auto k = static_cast<std::uint32_t>(targets.k());
    auto* counters = options.counters;
    auto* log = options.invariants;

    const detail::StageMembership stages(n, targets, counters);
    detail::StageScratch scratch(k);

    MecFreeState st;
    st.mcount.resize(n);
    st.best.assign(n, detail::nil);
    st.ell.assign(n, detail::nil);
    st.in_s.assign(n, 1);
    st.queued.assign(n, 0);
    st.s_size = n;

    std::vector<Vertex> queue;
    queue.reserve(n);
    std::size_t head = 0;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;

    for (Vertex v = 0; v < n; ++v) {
        st.mcount[v] = static_cast<std::uint32_t>(a.out(v).size());
        if (st.mcount[v] == 0) {
            st.best[v] = k + 1;
            queue.push_back(v);
            st.queued[v] = 1;
        }
    }
    st.queue_size = queue.size();

    while (st.s_size > 0) {
        if (log) check_mecfree_invariants(a, k, st, scratch, *log);

        Vertex v;
        if (head < queue.size()) {
            v = queue[head++];
            st.queued[v] = 0;
            --st.queue_size;
        } else {
            bool found = false;
            while (!heap.empty()) {
                const auto top = heap.top();
                heap.pop();
                if (counters) ++counters->heap_pops;
                if (st.in_s[top.v] && st.best[top.v] == top.best) {
                    v = top.v;
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw Error(ErrorCode::malformed,
                            "no random vertex with a processed successor while " + std::to_string(st.s_size) +
                                " vertices remain: input is not MEC-free");
            }
        }

        st.ell[v] = scratch.label(st.best[v], stages.of(v), counters);
        st.in_s[v] = 0;
        --st.s_size;
        for (Vertex w : a.in(v)) {
            const auto old = st.best[w];
#ifdef REACHPLAN_MUTANT_SWAP_MINMAX
            const bool take_max = a.owner(w) != Owner::random;
#else
            const bool take_max = a.owner(w) == Owner::random;
#endif
            std::uint32_t updated;
            if (old == detail::nil) {
                updated = st.ell[v];
            } else {
                updated = take_max ? std::max(old, st.ell[v]) : std::min(old, st.ell[v]);
            }
            st.best[w] = updated;
            if (a.owner(w) == Owner::random) {
                if (log) log->record(old == detail::nil || updated >= old, "mec-free propagation: random best decreased");
                if (updated != old && st.in_s[w]) {
                    heap.push({updated, w});
                    if (counters) ++counters->heap_pushes;
                }
            }
            if (--st.mcount[w] == 0 && st.in_s[w]) {
                queue.push_back(w);
                st.queued[w] = 1;
                ++st.queue_size;
            }
        }
        if (counters) counters->edges += a.in(v).size();
    }
    if (log) check_mecfree_invariants(a, k, st, scratch, *log);

    return Labeling{std::move(st.ell), k};
}

namespace {

SequentialResult lift_labels(const QuotientMdp& q, const Labeling& labels, Vertex start)
{
    SequentialResult result;
    result.labels.resize(q.rep_of.size());
    for (Vertex v = 0; v < q.rep_of.size(); ++v) {
        result.labels[v] = labels.ell[q.rep_of[v]];
        if (result.labels[v] == 1) result.winning_set.push_back(v);
    }
    result.winning = result.labels[start] == 1;
    return result;
}

}  // namespace

SequentialResult mdp_sequential(const Query& query, const SolveOptions& options)
{
    const auto mecs = mec_decompose(query.arena, options.counters);
    const auto q = build_quotient(query.arena, query.targets, mecs, options.counters);
    const auto labels = mecfree_sequential(q.arena, q.targets, options);
    return lift_labels(q, labels, query.start);
}

VertexSet mdp_as_reach(const Arena& mdp, const VertexSet& target, const SolveOptions& options)
{
    TargetTuple single;
    single.sets.push_back(target);
    const auto mecs = mec_decompose(mdp, options.counters);
    const auto q = build_quotient(mdp, single, mecs, options.counters);
    const auto labels = mecfree_sequential(q.arena, q.targets, options);
    return lift_labels(q, labels, 0).winning_set;
}

CoverageResult mdp_coverage(const Query& query, const SolveOptions& options)
{
    const auto n = query.arena.size();
    const auto mecs = mec_decompose(query.arena, options.counters);
    const auto q = build_quotient(query.arena, TargetTuple{}, mecs, options.counters);

    std::vector<std::uint32_t> wins(q.arena.size(), 0);
    CoverageResult result;
    result.winning = true;
    for (const auto& set : query.targets.sets) {
        TargetTuple single;
        single.sets.push_back(set);
        const auto mapped = map_targets(q, single, options.counters);
        const auto labels = mecfree_sequential(q.arena, mapped, options);
        for (Vertex r = 0; r < q.arena.size(); ++r) {
            if (labels.ell[r] == 1) ++wins[r];
        }
        const bool hit = labels.ell[q.rep_of[query.start]] == 1;
        result.per_target.push_back(hit);
        result.winning = result.winning && hit;
    }
    VertexSet all;
    for (Vertex v = 0; v < n; ++v) {
        if (wins[q.rep_of[v]] == query.targets.k()) all.push_back(v);
    }
    result.winning_set = std::move(all);
    return result;
}

}  // namespace reachplan
