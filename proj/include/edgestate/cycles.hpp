#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edgestate/graph.hpp"
#include "edgestate/prior.hpp"
#include "edgestate/rng.hpp"

namespace edgestate {

// Base-3 weighted cycle code. 3^k overflows 64 bits once the edge count
// passes ~40, so the code is arbitrary precision.
using CycleCode = boost::multiprecision::cpp_int;

// Node sequence grown from a root by following directed edges.
using Branch = std::vector<NodeId>;

struct DirectedCycle {
    std::vector<EdgeId> edge_indices;  // in traversal order
    EdgeStateVector edge_states;       // parallel to edge_indices, never Absent
    CycleCode decimal;

    std::size_t length() const { return edge_indices.size(); }
    // True when every cycle edge has the stored state in s.
    bool present_in(std::span<const EdgeState> s) const;
};

struct ReducedAdjacency {
    AdjacencyMatrix matrix;          // A + A^T with deleted rows/columns zeroed
    std::vector<NodeId> survivors;   // ascending
};

// Repeatedly drops nodes with fewer than two neighbours among the survivors.
ReducedAdjacency reduce_adjacency(const AdjacencyMatrix& a);

// Keeps the suffix that starts at the earlier occurrence of the leaf.
// Throws InputError if the leaf does not repeat.
Branch trim_branch(std::span<const NodeId> branch);

// Consecutive (from, to) pairs of a trimmed branch.
std::vector<Arc> branch_to_coordinates(std::span<const NodeId> trimmed);

// State 0 when from < to, else 1.
EdgeStateVector coordinates_to_states(std::span<const Arc> coords);
std::vector<EdgeId> coordinates_to_edge_indices(std::span<const Arc> coords,
                                                const CandidateGraph& g);

// sum over cycle edges k (1-based) of S_k * 3^k + k. Edge ids are 0-based.
CycleCode cycle_decimal(std::span<const EdgeId> edge_indices,
                        std::span<const EdgeState> edge_states, std::size_t edge_count);

// All simple directed cycles of `a`, which must orient candidate edges of g.
// Sorted by (length, decimal); one entry per distinct cycle.
std::vector<DirectedCycle> find_directed_cycles(const AdjacencyMatrix& a, const CandidateGraph& g);

struct CatalogEntry {
    std::vector<EdgeId> edges;                 // ascending
    std::array<DirectedCycle, 2> orientations;
};

// Simple cycles of the skeleton, each with both directed orientations.
// When the skeleton has more cycles than the cap, the catalog is marked
// overflowed and detection falls back to a per-state search.
class CycleCatalog {
public:
    static constexpr std::size_t kDefaultCap = 10000;

    CycleCatalog() = default;

    const CandidateGraph& graph() const { return graph_; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool overflowed() const { return overflowed_; }
    std::size_t cap() const { return cap_; }
    // Number of (length, decimal) signatures shared by distinct directed cycles.
    std::size_t signature_collisions() const { return collisions_; }

    // Bound on remove_cycles rounds.
    std::size_t repair_round_cap() const;

private:
    friend CycleCatalog build_cycle_catalog(const CandidateGraph& g, std::size_t cap);

    CandidateGraph graph_;
    std::vector<CatalogEntry> entries_;
    bool overflowed_ = false;
    std::size_t cap_ = kDefaultCap;
    std::size_t collisions_ = 0;
};

CycleCatalog build_cycle_catalog(const CandidateGraph& g,
                                 std::size_t cap = CycleCatalog::kDefaultCap);

// Directed cycles present in s, in catalog order.
std::vector<DirectedCycle> detect_cycles(std::span<const EdgeState> s, const CycleCatalog& catalog);

// Changes one edge per detected cycle, round by round, until s is acyclic.
// Throws UnsatisfiableError when a cycle has no changeable edge and
// GuardExceededError past CycleCatalog::repair_round_cap() rounds.
EdgeStateVector remove_cycles(EdgeStateVector s, const CycleCatalog& catalog, const Prior& prior,
                              const ConstraintSet& constraints, Rng& rng);

}  // namespace edgestate
