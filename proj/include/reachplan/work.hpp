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

#include <cstdint>
#include <string>
#include <vector>

namespace reachplan {

/// Operation counters reported by the solvers. The bench harness uses these
/// instead of wall time.
struct WorkCounters {
    std::uint64_t edges = 0;         ///< adjacency entries read
    std::uint64_t target_entries = 0;
    std::uint64_t heap_pushes = 0;
    std::uint64_t heap_pops = 0;

    std::uint64_t aux() const noexcept { return target_entries + heap_pushes + heap_pops; }

    WorkCounters& operator+=(const WorkCounters& o) noexcept
    {
        edges += o.edges;
        target_entries += o.target_entries;
        heap_pushes += o.heap_pushes;
        heap_pops += o.heap_pops;
        return *this;
    }
};

/// Collects loop-invariant checks of the label propagation algorithms.
struct InvariantLog {
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::vector<std::string> messages;  ///< first few violations only

    void record(bool ok, const char* what);
};

struct SolveOptions {
    WorkCounters* counters = nullptr;
    /// When set, every loop head re-verifies the algorithm's invariants in
    /// O(n + m). Meant for small instances.
    InvariantLog* invariants = nullptr;
};

}  // namespace reachplan
