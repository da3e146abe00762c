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

// reachplan: solve, generate, verify and bench planning queries.
// Exit codes: 0 win / pass, 1 lose / discrepancies, 2 error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "reachplan/arena.hpp"
#include "reachplan/driver.hpp"
#include "reachplan/reductions.hpp"

using namespace reachplan;

namespace {

constexpr int exit_win = 0;
constexpr int exit_lose = 1;
constexpr int exit_error = 2;

std::string read_input(const std::string& path)
{
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct SolveArgs {
    std::string path;
    std::string algorithm = "main";
    bool normalize_sinks = false;
    bool emit_strategy = false;
};

int cmd_solve(const SolveArgs& args)
{
    ParseOptions popts;
    popts.normalize_sinks = args.normalize_sinks;
    const auto query = parse(read_input(args.path), popts);
    const auto report = solve(query, args.algorithm == "oracle" ? Algorithm::oracle : Algorithm::main, {},
                              args.emit_strategy);
    std::cout << format_report(report);
    return report.winning ? exit_win : exit_lose;
}

struct GenerateArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t d = 6;
    std::size_t m = 0;
    std::size_t k = 2;
    double density = -1.0;
    double edge_probability = 0.3;
    std::uint64_t seed = 0;
    std::string kind = "graph";
    std::string objective = "sequential";
    std::string graph_path;
};

int cmd_generate(const GenerateArgs& args)
{
    if (args.family == "random") {
        static const std::map<std::string, Kind> kinds{{"graph", Kind::graph}, {"mdp", Kind::mdp}, {"game", Kind::game}};
        static const std::map<std::string, Objective> objectives{
            {"reach", Objective::reach}, {"coverage", Objective::coverage}, {"sequential", Objective::sequential}};
        GenParams p;
        p.kind = kinds.at(args.kind);
        p.objective = objectives.at(args.objective);
        p.n = args.n == 0 ? 8 : args.n;
        p.m = args.m == 0 ? 2 * p.n : args.m;
        p.k = p.objective == Objective::reach ? 1 : args.k;
        p.target_density = args.density < 0 ? 0.25 : args.density;
        p.seed = args.seed;
        std::cout << serialize(gen_random(p));
        return exit_win;
    }

    static const std::map<std::string, ReductionId> families{
        {"ov-mdp", ReductionId::ov_mdp},         {"tri-mdp", ReductionId::tri_mdp},
        {"ov-game", ReductionId::ov_game},       {"tri-game", ReductionId::tri_game},
        {"ov-game-seq", ReductionId::ov_game_seq}, {"tri-game-seq", ReductionId::tri_game_seq}};
    const auto id = families.at(args.family);

    ReductionInstance instance;
    if (is_ov_reduction(id)) {
        const auto count = args.n == 0 ? 4 : args.n;
        if (args.d == 0) throw Error(ErrorCode::infeasible, "--d must be positive");
        instance = reduce(id, random_ov(count, args.d, args.density < 0 ? 0.5 : args.density, args.seed));
    } else {
        Arena graph;
        if (!args.graph_path.empty()) {
            ParseOptions popts;
            graph = parse(read_input(args.graph_path), popts).arena;
        } else if (args.n != 0) {
            graph = random_sink_free_graph(args.n, args.edge_probability, args.seed);
        } else {
            graph = bidirected_triangle();
        }
        instance = reduce(id, graph);
    }
    std::cout << serialize(instance.query);
    std::cout << "# truth " << (instance.truth ? "true" : "false") << '\n';
    return exit_win;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reachability planning on graphs, MDPs and game graphs"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a query file; exit 0 if the start vertex wins, 1 if not");
    solve_cmd->add_option("file", solve_args.path, "query file ('-' for stdin)")->required();
    solve_cmd->add_option("--algorithm", solve_args.algorithm, "main|oracle")
        ->check(CLI::IsMember({"main", "oracle"}));
    solve_cmd->add_flag("--normalize-sinks", solve_args.normalize_sinks, "give sink vertices a self-loop");
    solve_cmd->add_flag("--emit-strategy", solve_args.emit_strategy, "print the staged game strategy");

    GenerateArgs gen_args;
    auto* gen_cmd = app.add_subcommand("generate", "Emit a reduction or random instance");
    gen_cmd->add_option("family", gen_args.family, "ov-mdp|tri-mdp|ov-game|tri-game|ov-game-seq|tri-game-seq|random")
        ->required()
        ->check(CLI::IsMember({"ov-mdp", "tri-mdp", "ov-game", "tri-game", "ov-game-seq", "tri-game-seq", "random"}));
    gen_cmd->add_option("--n", gen_args.n, "vectors per set (ov-*), graph vertices (tri-*, random)");
    gen_cmd->add_option("--d", gen_args.d, "vector dimension (ov-*)");
    gen_cmd->add_option("--m", gen_args.m, "edge count (random)");
    gen_cmd->add_option("--k", gen_args.k, "target sets (random)");
    gen_cmd->add_option("--density", gen_args.density, "bit density (ov-*) or target density (random)")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--p", gen_args.edge_probability, "edge probability of the random source graph (tri-*)")
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", gen_args.seed, "RNG seed");
    gen_cmd->add_option("--kind", gen_args.kind, "graph|mdp|game (random)")
        ->check(CLI::IsMember({"graph", "mdp", "game"}));
    gen_cmd->add_option("--objective", gen_args.objective, "reach|coverage|sequential (random)")
        ->check(CLI::IsMember({"reach", "coverage", "sequential"}));
    gen_cmd->add_option("--graph", gen_args.graph_path, "source graph file for tri-* (default: bidirected K3)");

    VerifyConfig verify_cfg;
    std::string verify_format = "text";
    auto* verify_cmd = app.add_subcommand("verify", "Compare the planners against the brute-force oracle");
    verify_cmd->add_option("--count", verify_cfg.count, "instances per (kind, objective) pair");
    verify_cmd->add_option("--max-n", verify_cfg.max_n, "largest vertex count");
    verify_cmd->add_option("--max-m", verify_cfg.max_m, "largest edge count");
    verify_cmd->add_option("--max-k", verify_cfg.max_k, "largest number of target sets");
    verify_cmd->add_option("--seed", verify_cfg.seed, "first instance seed");
    verify_cmd->add_flag("--check-invariants", verify_cfg.check_invariants, "assert loop invariants while solving");
    verify_cmd->add_flag("--check-quotients", verify_cfg.check_quotients, "assert MEC quotients are MEC-free");
    verify_cmd->add_option("--format", verify_format, "text|csv")->check(CLI::IsMember({"text", "csv"}));

    BenchConfig bench_cfg;
    std::string bench_family;
    std::string bench_growth;
    std::string bench_format = "csv";
    auto* bench_cmd = app.add_subcommand("bench", "Operation-counter scaling runs, CSV on stdout");
    bench_cmd->add_option("--family", bench_family, "graph-seq|mdp-seq|game-seq|graph-cov|mdp-cov|game-cov")
        ->required()
        ->check(CLI::IsMember({"graph-seq", "mdp-seq", "game-seq", "graph-cov", "mdp-cov", "game-cov"}));
    bench_cmd->add_option("--n", bench_cfg.n, "vertices");
    bench_cmd->add_option("--m", bench_cfg.m, "edges at the first step");
    bench_cmd->add_option("--k", bench_cfg.k, "target sets at the first step");
    bench_cmd->add_option("--steps", bench_cfg.steps, "doubling steps");
    bench_cmd->add_option("--seeds", bench_cfg.seeds, "instances per step");
    bench_cmd->add_option("--seed", bench_cfg.seed, "first seed");
    bench_cmd->add_option("--density", bench_cfg.target_density, "target density")->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--grow", bench_growth, "m|k|mk (default: m, mk for game families)")
        ->check(CLI::IsMember({"m", "k", "mk"}));
    bench_cmd->add_option("--format", bench_format, "csv|text")->check(CLI::IsMember({"csv", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_args);
        if (*gen_cmd) return cmd_generate(gen_args);
        if (*verify_cmd) {
            verify_cfg.threads = configured_threads();
            const auto report = run_verification(verify_cfg);
            std::cout << format_verify(report, verify_format == "csv");
            return report.discrepancies == 0 && report.invariants.violations == 0 && report.quotient_violations == 0
                       ? exit_win
                       : exit_lose;
        }
        if (*bench_cmd) {
            bench_cfg.family = *parse_family(bench_family);
            bench_cfg.growth = bench_growth.empty() ? default_growth(bench_cfg.family)
                               : bench_growth == "m" ? Growth::m
                               : bench_growth == "k" ? Growth::k
                                                     : Growth::mk;
            bench_cfg.threads = configured_threads();
            const auto records = run_bench(bench_cfg);
            if (bench_format == "csv") {
                std::cout << bench_csv_header() << '\n';
                for (const auto& r : records) std::cout << to_csv(r) << '\n';
            } else {
                const auto means = mean_edge_touches(records, bench_cfg.steps);
                for (std::size_t s = 0; s < means.size(); ++s) {
                    std::cout << "step " << s << " mean_edge_touches " << static_cast<std::uint64_t>(means[s]);
                    if (s > 0 && means[s - 1] > 0) std::cout << " ratio " << means[s] / means[s - 1];
                    std::cout << '\n';
                }
            }
            return exit_win;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}
