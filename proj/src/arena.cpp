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

#include "reachplan/arena.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace reachplan {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::syntax: return "SYNTAX";
    case ErrorCode::range: return "RANGE";
    case ErrorCode::kind_mismatch: return "KIND_MISMATCH";
    case ErrorCode::sink: return "SINK";
    case ErrorCode::not_a_dag: return "NOT_A_DAG";
    case ErrorCode::malformed: return "MALFORMED";
    case ErrorCode::dimension: return "DIMENSION";
    case ErrorCode::self_loop: return "SELF_LOOP";
    case ErrorCode::infeasible: return "INFEASIBLE";
    case ErrorCode::io: return "IO";
    }
    return "UNKNOWN";
}

std::string_view to_string(Kind kind)
{
    switch (kind) {
    case Kind::graph: return "graph";
    case Kind::mdp: return "mdp";
    case Kind::game: return "game";
    }
    return "?";
}

std::string_view to_string(Objective objective)
{
    switch (objective) {
    case Objective::reach: return "reach";
    case Objective::coverage: return "coverage";
    case Objective::sequential: return "sequential";
    }
    return "?";
}

namespace {

std::string position_message(const std::string& what, std::size_t line, std::size_t column)
{
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << what;
    return os.str();
}

char owner_token(Owner owner)
{
    switch (owner) {
    case Owner::p1: return '1';
    case Owner::p2: return '2';
    case Owner::random: return 'R';
    }
    return '?';
}

}  // namespace

ParseError::ParseError(ErrorCode code, const std::string& what, std::size_t line, std::size_t column)
    : Error(code, position_message(what, line, column)), line_(line), column_(column)
{
}

bool owner_allowed(Kind kind, Owner owner) noexcept
{
    switch (kind) {
    case Kind::graph: return owner == Owner::p1;
    case Kind::mdp: return owner != Owner::p2;
    case Kind::game: return owner != Owner::random;
    }
    return false;
}

Arena Arena::build(Kind kind, std::vector<Owner> owners, std::span<const Edge> edges)
{
    Arena a;
    a.kind_ = kind;
    const std::size_t n = owners.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (!owner_allowed(kind, owners[v])) {
            throw Error(ErrorCode::kind_mismatch,
                        "vertex " + std::to_string(v) + " has owner '" + owner_token(owners[v]) +
                            "' which is illegal in a " + std::string(to_string(kind)));
        }
    }
    a.owners_ = std::move(owners);
    a.out_.assign(n, {});
    a.in_.assign(n, {});
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw Error(ErrorCode::range, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                              ") out of range for n=" + std::to_string(n));
        }
        a.out_[u].push_back(v);
    }
    for (Vertex u = 0; u < n; ++u) {
        auto& succ = a.out_[u];
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        a.edge_count_ += succ.size();
        for (Vertex v : succ) a.in_[v].push_back(u);
    }
    // predecessors are appended in increasing u, so they are already sorted
    return a;
}

bool Arena::has_edge(Vertex u, Vertex v) const
{
    const auto& succ = out_[u];
    return std::binary_search(succ.begin(), succ.end(), v);
}

std::vector<Edge> Arena::edges() const
{
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u) {
        for (Vertex v : out_[u]) result.emplace_back(u, v);
    }
    return result;
}

VertexSet Arena::sinks() const
{
    VertexSet result;
    for (Vertex v = 0; v < size(); ++v) {
        if (out_[v].empty()) result.push_back(v);
    }
    return result;
}

Arena normalize_sinks(const Arena& arena)
{
    auto edges = arena.edges();
    for (Vertex v : arena.sinks()) edges.emplace_back(v, v);
    return Arena::build(arena.kind(), arena.owners(), edges);
}

std::size_t TargetTuple::total_size() const noexcept
{
    std::size_t total = 0;
    for (const auto& set : sets) total += set.size();
    return total;
}

VertexSet make_vertex_set(std::vector<Vertex> members)
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

bool contains(const VertexSet& set, Vertex v)
{
    return std::binary_search(set.begin(), set.end(), v);
}

TargetTuple make_targets(std::vector<VertexSet> sets, std::size_t n)
{
    TargetTuple t;
    t.sets.reserve(sets.size());
    for (auto& set : sets) {
        for (Vertex v : set) {
            if (v >= n) {
                throw Error(ErrorCode::range, "target vertex " + std::to_string(v) +
                                                  " out of range for n=" + std::to_string(n));
            }
        }
        t.sets.push_back(make_vertex_set(std::move(set)));
    }
    return t;
}

void validate(const Query& query)
{
    const auto n = query.arena.size();
    if (query.start >= n) {
        throw Error(ErrorCode::range, "start vertex " + std::to_string(query.start) +
                                          " out of range for n=" + std::to_string(n));
    }
    for (const auto& set : query.targets.sets) {
        for (Vertex v : set) {
            if (v >= n) throw Error(ErrorCode::range, "target vertex " + std::to_string(v) + " out of range");
        }
    }
    if (query.objective == Objective::reach && query.targets.k() != 1) {
        throw Error(ErrorCode::syntax, "objective reach requires exactly one target set, got " +
                                           std::to_string(query.targets.k()));
    }
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
};

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    bool next(Token& tok)
    {
        skip_space_and_comments();
        if (pos_ >= text_.size()) return false;
        tok.line = line_;
        tok.column = column_;
        const auto begin = pos_;
        while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '#') advance();
        tok.text = text_.substr(begin, pos_ - begin);
        return true;
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments()
    {
        while (pos_ < text_.size()) {
            if (is_space(text_[pos_])) {
                advance();
            } else if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Reader {
public:
    explicit Reader(std::string_view text) : tokens_(text) {}

    Token take(std::string_view what)
    {
        Token tok;
        if (!tokens_.next(tok)) {
            throw ParseError(ErrorCode::syntax, "unexpected end of input, expected " + std::string(what),
                             tokens_.line(), tokens_.column());
        }
        last_ = tok;
        return tok;
    }

    void keyword(std::string_view word)
    {
        auto tok = take("'" + std::string(word) + "'");
        if (tok.text != word) fail(tok, "expected '" + std::string(word) + "', got '" + std::string(tok.text) + "'");
    }

    std::uint64_t number(std::string_view what)
    {
        auto tok = take(what);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
            fail(tok, "expected " + std::string(what) + ", got '" + std::string(tok.text) + "'");
        }
        return value;
    }

    Vertex vertex(std::uint64_t n, std::string_view what)
    {
        auto value = number(what);
        if (value >= n) {
            throw ParseError(ErrorCode::range,
                             std::string(what) + " " + std::to_string(value) + " out of range for n=" + std::to_string(n),
                             last_.line, last_.column);
        }
        return static_cast<Vertex>(value);
    }

    void expect_end()
    {
        Token tok;
        if (tokens_.next(tok)) fail(tok, "trailing token '" + std::string(tok.text) + "'");
    }

    [[noreturn]] void fail(const Token& tok, const std::string& what, ErrorCode code = ErrorCode::syntax) const
    {
        throw ParseError(code, what, tok.line, tok.column);
    }

    const Token& last() const { return last_; }

private:
    Tokenizer tokens_;
    Token last_;
};

}  // namespace

Query parse(std::string_view text, const ParseOptions& options)
{
    Reader in(text);

    in.keyword("arena");
    auto kind_tok = in.take("arena kind");
    Kind kind;
    if (kind_tok.text == "graph") {
        kind = Kind::graph;
    } else if (kind_tok.text == "mdp") {
        kind = Kind::mdp;
    } else if (kind_tok.text == "game") {
        kind = Kind::game;
    } else {
        in.fail(kind_tok, "unknown arena kind '" + std::string(kind_tok.text) + "'");
    }
    const auto n = in.number("vertex count");
    if (n == 0) in.fail(in.last(), "vertex count must be positive");
    if (n > std::numeric_limits<Vertex>::max()) in.fail(in.last(), "vertex count too large", ErrorCode::range);

    in.keyword("owner");
    std::vector<Owner> owners(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        auto tok = in.take("owner tag");
        if (tok.text == "1") {
            owners[v] = Owner::p1;
        } else if (tok.text == "2") {
            owners[v] = Owner::p2;
        } else if (tok.text == "R") {
            owners[v] = Owner::random;
        } else {
            in.fail(tok, "unknown owner tag '" + std::string(tok.text) + "'");
        }
        if (!owner_allowed(kind, owners[v])) {
            in.fail(tok, "owner '" + std::string(tok.text) + "' illegal for kind " + std::string(to_string(kind)),
                    ErrorCode::kind_mismatch);
        }
    }

    in.keyword("edges");
    const auto m = in.number("edge count");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t e = 0; e < m; ++e) {
        Vertex u = in.vertex(n, "edge source");
        Vertex v = in.vertex(n, "edge target");
        edges.emplace_back(u, v);
    }

    in.keyword("targets");
    const auto k = in.number("target count");
    std::vector<VertexSet> sets(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        const auto size = in.number("target set size");
        sets[i].reserve(size);
        for (std::uint64_t j = 0; j < size; ++j) sets[i].push_back(in.vertex(n, "target vertex"));
    }

    in.keyword("objective");
    auto obj_tok = in.take("objective");
    Objective objective;
    if (obj_tok.text == "reach") {
        objective = Objective::reach;
    } else if (obj_tok.text == "coverage") {
        objective = Objective::coverage;
    } else if (obj_tok.text == "sequential") {
        objective = Objective::sequential;
    } else {
        in.fail(obj_tok, "unknown objective '" + std::string(obj_tok.text) + "'");
    }
    if (objective == Objective::reach && k != 1) {
        in.fail(obj_tok, "objective reach requires exactly one target set");
    }

    in.keyword("start");
    const Vertex start = in.vertex(n, "start vertex");
    in.expect_end();

    Query q;
    q.arena = Arena::build(kind, std::move(owners), edges);
    auto sinks = q.arena.sinks();
    if (!sinks.empty()) {
        if (!options.normalize_sinks) {
            throw Error(ErrorCode::sink, "vertex " + std::to_string(sinks.front()) +
                                             " has no outgoing edge (use sink normalization to add self-loops)");
        }
        q.arena = normalize_sinks(q.arena);
    }
    q.targets = make_targets(std::move(sets), n);
    q.objective = objective;
    q.start = start;
    return q;
}

std::string serialize(const Query& q)
{
    const auto& a = q.arena;
    std::ostringstream os;
    os << "arena " << to_string(a.kind()) << ' ' << a.size() << '\n';
    os << "owner";
    for (Owner o : a.owners()) os << ' ' << owner_token(o);
    os << '\n';
    os << "edges " << a.edge_count() << '\n';
    for (Vertex u = 0; u < a.size(); ++u) {
        for (Vertex v : a.out(u)) os << u << ' ' << v << '\n';
    }
    os << "targets " << q.targets.k() << '\n';
    for (const auto& set : q.targets.sets) {
        os << set.size();
        for (Vertex v : set) os << ' ' << v;
        os << '\n';
    }
    os << "objective " << to_string(q.objective) << '\n';
    os << "start " << q.start << '\n';
    return os.str();
}

}  // namespace reachplan
