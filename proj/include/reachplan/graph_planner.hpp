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

#include <optional>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/work.hpp"

namespace reachplan {

/// Per-vertex stage label. ell[v] = i means the best suffix objective that v
/// can achieve is Seq(T_i, ..., T_k); k + 1 means none of them.
struct Labeling {
    std::vector<std::uint32_t> ell;
    std::uint32_t k = 0;

    VertexSet winners() const;  // vertices with ell == 1
};

struct CoverageResult {
    std::vector<bool> per_target;  // evaluated at the query's start vertex
    bool winning = false;
    /// Intersection of the per-target winning regions, when the algorithm
    /// computes them (MDPs and games). Graph coverage runs a single BFS and
    /// leaves this empty.
    std::optional<VertexSet> winning_set;
};

struct SequentialResult {
    bool winning = false;
    VertexSet winning_set;
    std::vector<std::uint32_t> labels;  // per original vertex
};

struct SccPartition {
    std::vector<std::uint32_t> comp_of;
    std::vector<VertexSet> comps;
    /// Component ids, sinks of the condensation first.
    std::vector<std::uint32_t> topo_order;
};

/// Iterative Tarjan. When `active` is non-empty only vertices with
/// active[v] != 0 and the edges between them are considered; inactive
/// vertices get comp_of == UINT32_MAX.
SccPartition scc_decompose(const Arena& arena, WorkCounters* counters = nullptr,
                           const std::vector<std::uint8_t>& active = {});

VertexSet reachable_from(const Arena& arena, Vertex source, WorkCounters* counters = nullptr);

CoverageResult graph_coverage(const Query& query, const SolveOptions& options = {});

struct Condensation {
    Arena dag;
    TargetTuple targets;
    std::vector<std::uint32_t> comp_of;
};

/// Quotient by SCCs. Self-loops vanish; targets are mapped to components.
Condensation condense_with_targets(const Arena& arena, const TargetTuple& targets,
                                   WorkCounters* counters = nullptr);

/// Backward label propagation over a DAG. Vertices are processed in
/// reverse topological order driven by out-degree counters and a FIFO queue.
/// Throws NOT_A_DAG when the queue runs dry with vertices left.
Labeling dag_sequential(const Arena& dag, const TargetTuple& targets, const SolveOptions& options = {});

SequentialResult graph_sequential(const Query& query, const SolveOptions& options = {});

}  // namespace reachplan
