#include "edgestate/graph.hpp"

#include <algorithm>
#include <string>

#include "edgestate/errors.hpp"

namespace edgestate {

EdgeState edge_state_from_int(int v) {
    if (v < 0 || v > 2) {
        throw InputError("edge state must be 0, 1 or 2, got " + std::to_string(v));
    }
    return static_cast<EdgeState>(v);
}

char to_char(EdgeState s) { return static_cast<char>('0' + to_int(s)); }

CandidateGraph::CandidateGraph(std::size_t node_count, std::vector<CandidateEdge> edges)
    : b_(node_count), edges_(std::move(edges)), lookup_(node_count * node_count, -1),
      incident_(node_count) {
    for (const auto& e : edges_) {
        if (e.lo >= e.hi) {
            throw InputError("candidate edge must satisfy lo < hi (got " +
                             std::to_string(e.lo + 1) + ", " + std::to_string(e.hi + 1) + ")");
        }
        if (e.hi >= b_) {
            throw InputError("candidate edge references node " + std::to_string(e.hi + 1) +
                             " but the graph has " + std::to_string(b_) + " nodes");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InputError("duplicate candidate edge");
    }
    for (EdgeId i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        lookup_[e.lo * b_ + e.hi] = static_cast<std::ptrdiff_t>(i);
        lookup_[e.hi * b_ + e.lo] = static_cast<std::ptrdiff_t>(i);
        incident_[e.lo].push_back(i);
        incident_[e.hi].push_back(i);
    }
}

std::ptrdiff_t CandidateGraph::find(NodeId u, NodeId v) const {
    if (u >= b_ || v >= b_) return -1;
    return lookup_[u * b_ + v];
}

ConstraintSet::ConstraintSet(std::size_t edge_count)
    : allowed_(edge_count, Allowed{true, true, true}) {}

const ConstraintSet::Allowed& ConstraintSet::allowed(EdgeId e) const {
    static const Allowed all{true, true, true};
    return allowed_.empty() ? all : allowed_[e];
}

void ConstraintSet::restrict(EdgeId e, const Allowed& allowed) {
    if (e >= allowed_.size()) throw InputError("constraint edge index out of range");
    auto& cur = allowed_[e];
    for (int k = 0; k < 3; ++k) cur[k] = cur[k] && allowed[k];
    if (!cur[0] && !cur[1] && !cur[2]) {
        throw UnsatisfiableError("constraints leave edge " + std::to_string(e + 1) +
                                 " with no allowed state");
    }
}

void ConstraintSet::forbid_parent(const CandidateGraph& g, NodeId u, NodeId v) {
    const auto idx = g.find(u, v);
    if (idx < 0) {
        throw InputError("constraint on non-candidate pair (" + std::to_string(u + 1) + ", " +
                         std::to_string(v + 1) + ")");
    }
    // u -> v is Forward when u is the lower index.
    const int banned = u < v ? 0 : 1;
    Allowed mask{true, true, true};
    mask[banned] = false;
    restrict(static_cast<EdgeId>(idx), mask);
}

CandidateGraph candidate_from_adjacency(const AdjacencyMatrix& a) {
    const std::size_t b = a.size();
    std::vector<CandidateEdge> edges;
    for (NodeId j = 0; j < b; ++j) {
        if (a(j, j) != 0) {
            throw InputError("adjacency matrix has a nonzero diagonal at node " +
                             std::to_string(j + 1));
        }
        for (NodeId k = 0; k < b; ++k) {
            if (a(j, k) > 1) throw InputError("adjacency matrix must be binary");
        }
    }
    for (NodeId j = 0; j < b; ++j) {
        for (NodeId k = j + 1; k < b; ++k) {
            if (a(j, k) || a(k, j)) edges.push_back({j, k});
        }
    }
    return CandidateGraph(b, std::move(edges));
}

CandidateGraph fully_connected(std::size_t b) {
    if (b == 0) throw InputError("fully connected graph needs at least one node");
    std::vector<CandidateEdge> edges;
    edges.reserve(b * (b - 1) / 2);
    for (NodeId j = 0; j < b; ++j) {
        for (NodeId k = j + 1; k < b; ++k) edges.push_back({j, k});
    }
    return CandidateGraph(b, std::move(edges));
}

namespace {

void check_length(const CandidateGraph& g, std::span<const EdgeState> s) {
    if (s.size() != g.edge_count()) {
        throw InputError("state vector has " + std::to_string(s.size()) +
                         " entries but the candidate graph has " +
                         std::to_string(g.edge_count()) + " edges");
    }
}

}  // namespace

Arc arc_of(const CandidateEdge& edge, EdgeState s) {
    return s == EdgeState::Forward ? Arc{edge.lo, edge.hi} : Arc{edge.hi, edge.lo};
}

AdjacencyMatrix states_to_adjacency(const CandidateGraph& g, std::span<const EdgeState> s) {
    check_length(g, s);
    AdjacencyMatrix a(g.node_count());
    for (EdgeId i = 0; i < s.size(); ++i) {
        if (s[i] == EdgeState::Absent) continue;
        const Arc arc = arc_of(g.edge(i), s[i]);
        a(arc.from, arc.to) = 1;
    }
    return a;
}

std::vector<std::vector<NodeId>> parent_sets(const CandidateGraph& g,
                                             std::span<const EdgeState> s) {
    check_length(g, s);
    std::vector<std::vector<NodeId>> parents(g.node_count());
    for (EdgeId i = 0; i < s.size(); ++i) {
        if (s[i] == EdgeState::Absent) continue;
        const Arc arc = arc_of(g.edge(i), s[i]);
        parents[arc.to].push_back(arc.from);
    }
    for (auto& p : parents) std::sort(p.begin(), p.end());
    return parents;
}

bool is_acyclic(const CandidateGraph& g, std::span<const EdgeState> s) {
    check_length(g, s);
    const std::size_t b = g.node_count();
    std::vector<std::size_t> in_degree(b, 0);
    std::vector<std::vector<NodeId>> children(b);
    std::size_t arcs = 0;
    for (EdgeId i = 0; i < s.size(); ++i) {
        if (s[i] == EdgeState::Absent) continue;
        const Arc arc = arc_of(g.edge(i), s[i]);
        children[arc.from].push_back(arc.to);
        ++in_degree[arc.to];
        ++arcs;
    }
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < b; ++v) {
        if (in_degree[v] == 0) stack.push_back(v);
    }
    std::size_t removed = 0;
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        for (NodeId c : children[v]) {
            ++removed;
            if (--in_degree[c] == 0) stack.push_back(c);
        }
    }
    return removed == arcs;
}

std::string state_string(std::span<const EdgeState> s) {
    std::string out;
    out.reserve(s.size());
    for (EdgeState x : s) out.push_back(to_char(x));
    return out;
}

EdgeStateVector parse_state_string(const std::string& digits) {
    EdgeStateVector s;
    s.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '2') throw InputError("state string may only contain 0, 1, 2");
        s.push_back(static_cast<EdgeState>(c - '0'));
    }
    return s;
}

}  // namespace edgestate
