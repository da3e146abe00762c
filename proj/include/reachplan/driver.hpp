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
#include <optional>
#include <string>
#include <vector>

#include "reachplan/arena.hpp"
#include "reachplan/reductions.hpp"
#include "reachplan/work.hpp"

namespace reachplan {

enum class Algorithm : std::uint8_t { main, oracle };

struct SolveReport {
    bool winning = false;
    std::optional<VertexSet> winning_set;
    std::vector<bool> per_target;  // coverage only
    std::vector<std::uint32_t> labels;  // sequential on graphs and MDPs
    std::string strategy;  // game sequential/reach with emit_strategy
};

/// Dispatches on (kind, objective) to the planners or to the oracle.
SolveReport solve(const Query& query, Algorithm algorithm, const SolveOptions& options = {},
                  bool emit_strategy = false);

/// "winning <bool>\nwinning_set <count> <indices>|-\n" followed by the
/// strategy lines when present.
std::string format_report(const SolveReport& report);

/// Worker count for verify/bench: REACHPLAN_THREADS if set (0 = serial),
/// otherwise the OpenMP default.
int configured_threads();

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
    std::size_t count = 100;  // instances per (kind, objective) pair
    std::size_t max_n = 8;
    std::size_t max_m = 24;
    std::size_t max_k = 3;
    std::uint64_t seed = 1;
    bool check_invariants = false;
    bool check_quotients = false;
    int threads = 0;
    std::vector<Kind> kinds{Kind::graph, Kind::mdp, Kind::game};
    std::vector<Objective> objectives{Objective::reach, Objective::coverage, Objective::sequential};
};

struct PairSummary {
    Kind kind;
    Objective objective;
    std::size_t instances = 0;
    std::size_t discrepancies = 0;
};

struct VerifyReport {
    std::vector<PairSummary> pairs;
    std::size_t instances = 0;
    std::size_t discrepancies = 0;
    InvariantLog invariants;
    std::size_t quotient_checks = 0;
    std::size_t quotient_violations = 0;
    std::vector<std::string> failures;  // first few, with instance descriptors
};

/// Instance parameters for one verify seed; deterministic.
GenParams verify_params(Kind kind, Objective objective, std::uint64_t seed, const VerifyConfig& config);

VerifyReport run_verification(const VerifyConfig& config);

std::string format_verify(const VerifyReport& report, bool csv);

// ---------------------------------------------------------------------------
// bench

enum class BenchFamily : std::uint8_t { graph_seq, mdp_seq, game_seq, graph_cov, mdp_cov, game_cov };
enum class Growth : std::uint8_t { m, k, mk };

std::optional<BenchFamily> parse_family(std::string_view name);
std::string_view to_string(BenchFamily family);
/// m for graph and MDP families, m and k together for game families.
Growth default_growth(BenchFamily family);

struct BenchConfig {
    BenchFamily family = BenchFamily::graph_seq;
    std::size_t n = 256;
    std::size_t m = 1024;
    std::size_t k = 16;
    std::size_t steps = 5;  // doublings; steps + 1 scale points
    std::size_t seeds = 10;
    std::uint64_t seed = 1;
    double target_density = 0.1;
    Growth growth = Growth::m;
    int threads = 0;
};

struct BenchRecord {
    BenchFamily family;
    Kind kind;
    Objective objective;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool answer = false;
    std::uint64_t edge_touches = 0;
    std::uint64_t aux_ops = 0;
    std::uint64_t wall_ns = 0;
};

/// One record per (scale step, seed), sorted by step then seed.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

std::string bench_csv_header();
std::string to_csv(const BenchRecord& record);

/// Mean edge_touches per scale step.
std::vector<double> mean_edge_touches(const std::vector<BenchRecord>& records, std::size_t steps);

}  // namespace reachplan
