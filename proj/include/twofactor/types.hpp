#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

namespace twofactor {

/// Vertices are dense integers in [0, n).
using Vertex = std::int32_t;

/// Undirected edge, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(Vertex a, Vertex b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
}

constexpr bool touches(const Edge& e, Vertex x) noexcept { return e.u == x || e.v == x; }

constexpr bool incident(const Edge& e, const Edge& f) noexcept {
    return touches(e, f.u) || touches(e, f.v);
}

using EdgeSet = std::set<Edge>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph / cover / params text. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class GraphError : public Error {
public:
    using Error::Error;
};

class CoverError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace twofactor
