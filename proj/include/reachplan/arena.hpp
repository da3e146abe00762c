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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace reachplan {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

enum class Kind : std::uint8_t { graph, mdp, game };
enum class Owner : std::uint8_t { p1, p2, random };
enum class Objective : std::uint8_t { reach, coverage, sequential };

enum class ErrorCode {
    syntax,
    range,
    kind_mismatch,
    sink,
    not_a_dag,
    malformed,
    dimension,
    self_loop,
    infeasible,
    io,
};

std::string_view to_string(ErrorCode code);
std::string_view to_string(Kind kind);
std::string_view to_string(Objective objective);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Thrown by the text parser; carries the position of the offending token.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

using Edge = std::pair<Vertex, Vertex>;

/**
 * Explicit-state transition structure shared by graphs, MDPs and game graphs.
 *
 * Vertices are dense indices 0..n-1. Successor and predecessor lists are kept
 * sorted and duplicate-free; the predecessor lists are exactly the transpose
 * of the successor lists. Random vertices move uniformly over their
 * successors, so only the edge support is stored.
 *
 * Sinks are permitted here because condensations and MEC quotients produce
 * them. Input validation (parse) rejects sinks unless normalization is asked
 * for.
 */
class Arena {
public:
    Arena() = default;

    /// Validates ranges and owner tags, merges duplicate edges.
    static Arena build(Kind kind, std::vector<Owner> owners, std::span<const Edge> edges);

    Kind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return owners_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    Owner owner(Vertex v) const { return owners_[v]; }
    const std::vector<Owner>& owners() const noexcept { return owners_; }
    std::span<const Vertex> out(Vertex v) const { return out_[v]; }
    std::span<const Vertex> in(Vertex v) const { return in_[v]; }

    bool has_edge(Vertex u, Vertex v) const;
    std::vector<Edge> edges() const;
    VertexSet sinks() const;

    friend bool operator==(const Arena&, const Arena&) = default;

private:
    Kind kind_ = Kind::graph;
    std::vector<Owner> owners_;
    std::vector<std::vector<Vertex>> out_;
    std::vector<std::vector<Vertex>> in_;
    std::size_t edge_count_ = 0;
};

bool owner_allowed(Kind kind, Owner owner) noexcept;

/// Gives every sink a self-loop. Idempotent; reachability is unaffected
/// because a reachability objective is decided at the first visit.
Arena normalize_sinks(const Arena& arena);

/// Ordered tuple of target sets (T_1, ..., T_k). Order matters for the
/// sequential objective and is ignored by coverage.
struct TargetTuple {
    std::vector<VertexSet> sets;

    std::size_t k() const noexcept { return sets.size(); }
    std::size_t total_size() const noexcept;

    friend bool operator==(const TargetTuple&, const TargetTuple&) = default;
};

/// Sorts and deduplicates each set; throws RANGE when a member is >= n.
TargetTuple make_targets(std::vector<VertexSet> sets, std::size_t n);

struct Query {
    Arena arena;
    TargetTuple targets;
    Objective objective = Objective::reach;
    Vertex start = 0;

    friend bool operator==(const Query&, const Query&) = default;
};

/// Checks the Query-level invariants (REACH has k = 1, start in range).
void validate(const Query& query);

struct ParseOptions {
    bool normalize_sinks = false;
};

Query parse(std::string_view text, const ParseOptions& options = {});
std::string serialize(const Query& query);

VertexSet make_vertex_set(std::vector<Vertex> members);
bool contains(const VertexSet& set, Vertex v);

}  // namespace reachplan
