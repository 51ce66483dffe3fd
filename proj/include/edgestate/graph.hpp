#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace edgestate {

using NodeId = std::size_t;  // 0-based internally, 1-based in all I/O
using EdgeId = std::size_t;  // position in CandidateGraph::edges()

// State of one candidate edge (lo, hi) with lo < hi.
enum class EdgeState : std::uint8_t {
    Forward = 0,  // lo -> hi
    Reverse = 1,  // hi -> lo
    Absent = 2,
};

constexpr int to_int(EdgeState s) { return static_cast<int>(s); }
EdgeState edge_state_from_int(int v);
char to_char(EdgeState s);

using EdgeStateVector = std::vector<EdgeState>;

struct CandidateEdge {
    NodeId lo = 0;
    NodeId hi = 0;

    friend auto operator<=>(const CandidateEdge&, const CandidateEdge&) = default;
};

// Directed edge (from -> to) induced by a present edge state.
struct Arc {
    NodeId from = 0;
    NodeId to = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Dense b x b 0/1 matrix. Used both for directed graphs and for symmetric
// skeleton input.
class AdjacencyMatrix {
public:
    AdjacencyMatrix() = default;
    explicit AdjacencyMatrix(std::size_t b) : b_(b), cells_(b * b, 0) {}

    std::size_t size() const { return b_; }
    std::uint8_t operator()(NodeId j, NodeId k) const { return cells_[j * b_ + k]; }
    std::uint8_t& operator()(NodeId j, NodeId k) { return cells_[j * b_ + k]; }

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

private:
    std::size_t b_ = 0;
    std::vector<std::uint8_t> cells_;
};

// Node count plus the sorted list of undirected candidate edges. Edge index
// is the position in the sorted list, so indexing is a pure function of the
// edge set.
class CandidateGraph {
public:
    CandidateGraph() = default;
    // Sorts and validates; throws InputError on lo >= hi, out-of-range nodes
    // or duplicates.
    CandidateGraph(std::size_t node_count, std::vector<CandidateEdge> edges);

    std::size_t node_count() const { return b_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<CandidateEdge>& edges() const { return edges_; }
    const CandidateEdge& edge(EdgeId e) const { return edges_[e]; }

    // Edge index of the unordered pair {u, v}, or -1 when not a candidate.
    std::ptrdiff_t find(NodeId u, NodeId v) const;
    bool contains(NodeId u, NodeId v) const { return find(u, v) >= 0; }

    // Candidate edges incident to node v.
    const std::vector<EdgeId>& incident(NodeId v) const { return incident_[v]; }

    friend bool operator==(const CandidateGraph& a, const CandidateGraph& b) {
        return a.b_ == b.b_ && a.edges_ == b.edges_;
    }

private:
    std::size_t b_ = 0;
    std::vector<CandidateEdge> edges_;
    std::vector<std::ptrdiff_t> lookup_;  // b*b -> edge index or -1
    std::vector<std::vector<EdgeId>> incident_;
};

// Allowed states per edge. Default: every state allowed on every edge.
class ConstraintSet {
public:
    using Allowed = std::array<bool, 3>;

    ConstraintSet() = default;
    explicit ConstraintSet(std::size_t edge_count);

    std::size_t edge_count() const { return allowed_.size(); }
    bool empty() const { return allowed_.empty(); }
    bool allows(EdgeId e, EdgeState s) const {
        return allowed_.empty() || allowed_[e][to_int(s)];
    }
    const Allowed& allowed(EdgeId e) const;

    // Intersects edge e's allowed set with `allowed`; throws
    // UnsatisfiableError if the result is empty.
    void restrict(EdgeId e, const Allowed& allowed);

    // "u may not be a parent of v": removes the orientation u -> v.
    void forbid_parent(const CandidateGraph& g, NodeId u, NodeId v);

private:
    std::vector<Allowed> allowed_;
};

CandidateGraph candidate_from_adjacency(const AdjacencyMatrix& a);
CandidateGraph fully_connected(std::size_t b);

AdjacencyMatrix states_to_adjacency(const CandidateGraph& g, std::span<const EdgeState> s);
std::vector<std::vector<NodeId>> parent_sets(const CandidateGraph& g,
                                             std::span<const EdgeState> s);

// Directed arc for edge e in state s; s must not be Absent.
Arc arc_of(const CandidateEdge& edge, EdgeState s);

// Kahn's algorithm over the arcs induced by s.
bool is_acyclic(const CandidateGraph& g, std::span<const EdgeState> s);

// Digits 0/1/2, one per edge, e.g. "0012".
std::string state_string(std::span<const EdgeState> s);
EdgeStateVector parse_state_string(const std::string& digits);

}  // namespace edgestate
