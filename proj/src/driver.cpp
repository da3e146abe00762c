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

#include "reachplan/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "reachplan/game_planner.hpp"
#include "reachplan/graph_planner.hpp"
#include "reachplan/mdp_planner.hpp"
#include "reachplan/oracle.hpp"

namespace reachplan {

namespace {

VertexSet intersect_all(std::size_t n, const std::vector<VertexSet>& sets)
{
    std::vector<std::size_t> hits(n, 0);
    for (const auto& s : sets) {
        for (Vertex v : s) ++hits[v];
    }
    VertexSet result;
    for (Vertex v = 0; v < n; ++v) {
        if (hits[v] == sets.size()) result.push_back(v);
    }
    return result;
}

SolveReport solve_main(const Query& q, const SolveOptions& options, bool emit_strategy)
{
    SolveReport r;
    const auto kind = q.arena.kind();
    if (q.objective == Objective::coverage) {
        CoverageResult cov;
        switch (kind) {
        case Kind::graph: cov = graph_coverage(q, options); break;
        case Kind::mdp: cov = mdp_coverage(q, options); break;
        case Kind::game: cov = game_coverage(q, options); break;
        }
        r.winning = cov.winning;
        r.per_target = std::move(cov.per_target);
        r.winning_set = std::move(cov.winning_set);
        return r;
    }

    if (kind == Kind::game) {
        GameSequentialResult game;
        if (q.objective == Objective::reach) {
            game.stages.push_back(attractor_p1(q.arena, q.targets.sets.front(), options.counters));
            game.winning_set = game.stages.front().set;
            game.winning = contains(game.winning_set, q.start);
        } else {
            game = game_sequential(q, options);
        }
        r.winning = game.winning;
        r.winning_set = game.winning_set;
        if (emit_strategy) r.strategy = format_strategy(game);
        return r;
    }

    if (kind == Kind::mdp && q.objective == Objective::reach) {
        auto set = mdp_as_reach(q.arena, q.targets.sets.front(), options);
        r.winning = contains(set, q.start);
        r.winning_set = std::move(set);
        return r;
    }

    // reach on graphs is the one-stage sequential objective
    auto seq = kind == Kind::graph ? graph_sequential(q, options) : mdp_sequential(q, options);
    r.winning = seq.winning;
    r.winning_set = std::move(seq.winning_set);
    if (q.objective == Objective::sequential) r.labels = std::move(seq.labels);
    return r;
}

SolveReport solve_oracle(const Query& q)
{
    SolveReport r;
    const auto kind = q.arena.kind();
    const auto n = q.arena.size();
    switch (q.objective) {
    case Objective::reach: r.winning_set = oracle::reach_region(q.arena, q.targets.sets.front()); break;
    case Objective::coverage: {
        std::vector<VertexSet> regions;
        r.winning = true;
        for (const auto& t : q.targets.sets) {
            regions.push_back(oracle::reach_region(q.arena, t));
            const bool hit = contains(regions.back(), q.start);
            r.per_target.push_back(hit);
            r.winning = r.winning && hit;
        }
        if (kind != Kind::graph) r.winning_set = intersect_all(n, regions);
        return r;
    }
    case Objective::sequential:
        switch (kind) {
        case Kind::graph:
            r.labels = oracle::graph_sequential_labels(q.arena, q.targets);
            break;
        case Kind::mdp:
            r.labels = oracle::mdp_sequential_labels(q.arena, q.targets);
            break;
        case Kind::game: r.winning_set = oracle::game_sequential(q); break;
        }
        if (!r.labels.empty()) {
            VertexSet set;
            for (Vertex v = 0; v < n; ++v) {
                if (r.labels[v] == 1) set.push_back(v);
            }
            r.winning_set = std::move(set);
        }
        break;
    }
    r.winning = contains(*r.winning_set, q.start);
    return r;
}

}  // namespace

SolveReport solve(const Query& query, Algorithm algorithm, const SolveOptions& options, bool emit_strategy)
{
    validate(query);
    return algorithm == Algorithm::main ? solve_main(query, options, emit_strategy) : solve_oracle(query);
}

std::string format_report(const SolveReport& report)
{
    std::ostringstream os;
    os << "winning " << (report.winning ? "true" : "false") << '\n';
    os << "winning_set";
    if (report.winning_set) {
        os << ' ' << report.winning_set->size();
        for (Vertex v : *report.winning_set) os << ' ' << v;
    } else {
        os << " -";
    }
    os << '\n' << report.strategy;
    return os.str();
}

int configured_threads()
{
    if (const char* env = std::getenv("REACHPLAN_THREADS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && value >= 0) return static_cast<int>(value);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 0;
#endif
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
    // splitmix64 finalizer over a combined word
    std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b + 0x632BE59BD9B4E019ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, count), on `threads` OpenMP workers (0 or 1:
/// serial). Results must be written to per-index slots.
template <class Body>
void fan_out(std::size_t count, int threads, Body body)
{
#ifdef _OPENMP
    if (threads > 1) {
        const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t i = 0; i < total; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)threads;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

struct InstanceOutcome {
    bool discrepancy = false;
    std::string failure;
    InvariantLog invariants;
    bool quotient_checked = false;
    bool quotient_ok = true;
};

bool same_report(const SolveReport& main, const SolveReport& ref, Objective objective, std::string& why)
{
    if (main.winning != ref.winning) {
        why = "winning differs";
        return false;
    }
    if (objective == Objective::coverage && main.per_target != ref.per_target) {
        why = "per-target coverage differs";
        return false;
    }
    if (main.winning_set.has_value() != ref.winning_set.has_value() ||
        (main.winning_set && *main.winning_set != *ref.winning_set)) {
        why = "winning set differs";
        return false;
    }
    if (objective == Objective::sequential && main.labels != ref.labels) {
        why = "labels differ";
        return false;
    }
    return true;
}

InstanceOutcome verify_instance(const Query& q, const VerifyConfig& config)
{
    InstanceOutcome out;
    SolveOptions options;
    if (config.check_invariants) options.invariants = &out.invariants;
    try {
        const auto main = solve(q, Algorithm::main, options);
        const auto ref = solve(q, Algorithm::oracle);
        std::string why;
        if (!same_report(main, ref, q.objective, why)) {
            out.discrepancy = true;
            out.failure = why;
        }
    } catch (const std::exception& e) {
        out.discrepancy = true;
        out.failure = std::string("exception: ") + e.what();
    }
    if (config.check_quotients && q.arena.kind() == Kind::mdp) {
        out.quotient_checked = true;
        const auto quotient = build_quotient(q.arena, q.targets, mec_decompose(q.arena));
        out.quotient_ok = mec_decompose(quotient.arena).mecs.empty();
    }
    return out;
}

}  // namespace

GenParams verify_params(Kind kind, Objective objective, std::uint64_t seed, const VerifyConfig& config)
{
    std::mt19937_64 rng(mix(seed, static_cast<std::uint64_t>(kind) * 3 + static_cast<std::uint64_t>(objective)));
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    GenParams p;
    p.kind = kind;
    p.objective = objective;
    p.n = uniform(1, std::max<std::size_t>(config.max_n, 1));
    p.m = uniform(p.n, std::max(p.n, std::min(config.max_m, p.n * p.n)));
    p.k = objective == Objective::reach ? 1 : uniform(0, config.max_k);
    static constexpr double densities[] = {0.1, 0.2, 0.3, 0.5};
    p.target_density = densities[uniform(0, 3)];
    p.seed = rng();
    return p;
}

VerifyReport run_verification(const VerifyConfig& config)
{
    struct Job {
        Kind kind;
        Objective objective;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (Kind kind : config.kinds) {
        for (Objective objective : config.objectives) {
            for (std::size_t i = 0; i < config.count; ++i) jobs.push_back({kind, objective, config.seed + i});
        }
    }

    std::vector<InstanceOutcome> outcomes(jobs.size());
    fan_out(jobs.size(), config.threads, [&](std::size_t i) {
        const auto& job = jobs[i];
        outcomes[i] = verify_instance(gen_random(verify_params(job.kind, job.objective, job.seed, config)), config);
    });

    VerifyReport report;
    for (Kind kind : config.kinds) {
        for (Objective objective : config.objectives) report.pairs.push_back({kind, objective, 0, 0});
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& job = jobs[i];
        const auto& out = outcomes[i];
        auto& pair = report.pairs[i / std::max<std::size_t>(config.count, 1)];
        ++pair.instances;
        ++report.instances;
        if (out.discrepancy) {
            ++pair.discrepancies;
            ++report.discrepancies;
            if (report.failures.size() < 20) {
                std::ostringstream os;
                os << to_string(job.kind) << '/' << to_string(job.objective) << " seed " << job.seed << ": "
                   << out.failure;
                report.failures.push_back(os.str());
            }
        }
        report.invariants.checks += out.invariants.checks;
        report.invariants.violations += out.invariants.violations;
        for (const auto& msg : out.invariants.messages) {
            if (report.invariants.messages.size() < 16) report.invariants.messages.push_back(msg);
        }
        if (out.quotient_checked) {
            ++report.quotient_checks;
            if (!out.quotient_ok) ++report.quotient_violations;
        }
    }
    return report;
}

std::string format_verify(const VerifyReport& report, bool csv)
{
    std::ostringstream os;
    if (csv) {
        os << "kind,objective,instances,discrepancies\n";
        for (const auto& p : report.pairs) {
            os << to_string(p.kind) << ',' << to_string(p.objective) << ',' << p.instances << ','
               << p.discrepancies << '\n';
        }
        return os.str();
    }
    for (const auto& p : report.pairs) {
        os << "pair " << to_string(p.kind) << ' ' << to_string(p.objective) << " instances " << p.instances
           << " discrepancies " << p.discrepancies << '\n';
    }
    for (const auto& f : report.failures) os << "failure " << f << '\n';
    if (report.invariants.checks > 0) {
        os << "invariant_checks " << report.invariants.checks << " violations " << report.invariants.violations
           << '\n';
    }
    if (report.quotient_checks > 0) {
        os << "quotient_checks " << report.quotient_checks << " with_mecs " << report.quotient_violations << '\n';
    }
    os << "instances " << report.instances << '\n';
    os << "discrepancies " << report.discrepancies << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// bench

std::optional<BenchFamily> parse_family(std::string_view name)
{
    for (auto f : {BenchFamily::graph_seq, BenchFamily::mdp_seq, BenchFamily::game_seq, BenchFamily::graph_cov,
                   BenchFamily::mdp_cov, BenchFamily::game_cov}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view to_string(BenchFamily family)
{
    switch (family) {
    case BenchFamily::graph_seq: return "graph-seq";
    case BenchFamily::mdp_seq: return "mdp-seq";
    case BenchFamily::game_seq: return "game-seq";
    case BenchFamily::graph_cov: return "graph-cov";
    case BenchFamily::mdp_cov: return "mdp-cov";
    case BenchFamily::game_cov: return "game-cov";
    }
    return "?";
}

Growth default_growth(BenchFamily family)
{
    return family == BenchFamily::game_seq || family == BenchFamily::game_cov ? Growth::mk : Growth::m;
}

namespace {

Kind family_kind(BenchFamily f)
{
    switch (f) {
    case BenchFamily::graph_seq:
    case BenchFamily::graph_cov: return Kind::graph;
    case BenchFamily::mdp_seq:
    case BenchFamily::mdp_cov: return Kind::mdp;
    default: return Kind::game;
    }
}

Objective family_objective(BenchFamily f)
{
    return f == BenchFamily::graph_seq || f == BenchFamily::mdp_seq || f == BenchFamily::game_seq
               ? Objective::sequential
               : Objective::coverage;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config)
{
    const auto scales = config.steps + 1;
    std::vector<BenchRecord> records(scales * config.seeds);
    fan_out(records.size(), config.threads, [&](std::size_t idx) {
        const auto step = idx / config.seeds;
        const auto s = config.seed + idx % config.seeds;
        const bool grow_m = config.growth != Growth::k;
        const bool grow_k = config.growth != Growth::m;

        GenParams p;
        p.kind = family_kind(config.family);
        p.objective = family_objective(config.family);
        p.n = config.n;
        p.m = grow_m ? config.m << step : config.m;
        p.k = grow_k ? config.k << step : config.k;
        p.target_density = config.target_density;
        p.seed = mix(s, mix(p.m, p.k));
        const auto q = gen_random(p);

        WorkCounters counters;
        SolveOptions options;
        options.counters = &counters;
        const auto t0 = std::chrono::steady_clock::now();
        const auto report = solve(q, Algorithm::main, options);
        const auto t1 = std::chrono::steady_clock::now();

        auto& r = records[idx];
        r.family = config.family;
        r.kind = p.kind;
        r.objective = p.objective;
        r.n = p.n;
        r.m = q.arena.edge_count();
        r.k = p.k;
        r.seed = s;
        r.answer = report.winning;
        r.edge_touches = counters.edges;
        r.aux_ops = counters.aux();
        r.wall_ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    });
    return records;
}

std::string bench_csv_header()
{
    return "family,kind,objective,n,m,k,seed,answer,edge_touches,aux_ops,wall_ns";
}

std::string to_csv(const BenchRecord& r)
{
    std::ostringstream os;
    os << to_string(r.family) << ',' << to_string(r.kind) << ',' << to_string(r.objective) << ',' << r.n << ','
       << r.m << ',' << r.k << ',' << r.seed << ',' << (r.answer ? "true" : "false") << ',' << r.edge_touches << ','
       << r.aux_ops << ',' << r.wall_ns;
    return os.str();
}

std::vector<double> mean_edge_touches(const std::vector<BenchRecord>& records, std::size_t steps)
{
    std::vector<double> sum(steps + 1, 0.0);
    std::vector<std::size_t> count(steps + 1, 0);
    // records are laid out step-major with a fixed number of seeds per step
    const auto per_step = records.size() / (steps + 1);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto step = i / per_step;
        sum[step] += static_cast<double>(records[i].edge_touches);
        ++count[step];
    }
    for (std::size_t s = 0; s <= steps; ++s) sum[s] /= static_cast<double>(std::max<std::size_t>(count[s], 1));
    return sum;
}

}  // namespace reachplan
