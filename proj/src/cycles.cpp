#include "edgestate/cycles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "edgestate/errors.hpp"

namespace edgestate {

bool DirectedCycle::present_in(std::span<const EdgeState> s) const {
    for (std::size_t i = 0; i < edge_indices.size(); ++i) {
        if (s[edge_indices[i]] != edge_states[i]) return false;
    }
    return true;
}

ReducedAdjacency reduce_adjacency(const AdjacencyMatrix& a) {
    const std::size_t b = a.size();
    AdjacencyMatrix sym(b);
    for (NodeId j = 0; j < b; ++j) {
        for (NodeId k = 0; k < b; ++k) {
            if (a(j, k) > 1) throw InputError("adjacency matrix must be binary");
            sym(j, k) = (a(j, k) || a(k, j)) ? 1 : 0;
        }
    }

    std::vector<bool> alive(b, true);
    std::size_t alive_count = b;
    while (alive_count > 2) {
        std::vector<NodeId> drop;
        for (NodeId j = 0; j < b; ++j) {
            if (!alive[j]) continue;
            std::size_t degree = 0;
            for (NodeId k = 0; k < b; ++k) degree += alive[k] && sym(j, k);
            if (degree < 2) drop.push_back(j);
        }
        if (drop.empty()) break;
        for (NodeId j : drop) alive[j] = false;
        alive_count -= drop.size();
    }
    if (alive_count <= 2) {
        // Too few rows left to hold a cycle; a lone pair can still appear
        // in the survivor list but carries no cycle.
        for (NodeId j = 0; j < b; ++j) {
            if (!alive[j]) continue;
            std::size_t degree = 0;
            for (NodeId k = 0; k < b; ++k) degree += alive[k] && sym(j, k);
            if (degree < 2) alive[j] = false;
        }
    }

    ReducedAdjacency out{AdjacencyMatrix(b), {}};
    for (NodeId j = 0; j < b; ++j) {
        if (!alive[j]) continue;
        out.survivors.push_back(j);
        for (NodeId k = 0; k < b; ++k) {
            if (alive[k]) out.matrix(j, k) = sym(j, k);
        }
    }
    return out;
}

Branch trim_branch(std::span<const NodeId> branch) {
    if (branch.size() < 2) throw InputError("branch too short to contain a cycle");
    const NodeId leaf = branch.back();
    for (std::size_t i = branch.size() - 1; i-- > 0;) {
        if (branch[i] == leaf) return Branch(branch.begin() + static_cast<std::ptrdiff_t>(i), branch.end());
    }
    throw InputError("branch leaf never repeats; the branch holds no cycle");
}

std::vector<Arc> branch_to_coordinates(std::span<const NodeId> trimmed) {
    if (trimmed.size() < 2 || trimmed.front() != trimmed.back()) {
        throw InputError("branch must be trimmed (first node equal to last)");
    }
    std::vector<Arc> coords;
    coords.reserve(trimmed.size() - 1);
    for (std::size_t i = 0; i + 1 < trimmed.size(); ++i) coords.push_back({trimmed[i], trimmed[i + 1]});
    return coords;
}

EdgeStateVector coordinates_to_states(std::span<const Arc> coords) {
    EdgeStateVector states;
    states.reserve(coords.size());
    for (const Arc& c : coords) {
        if (c.from == c.to) throw InputError("coordinate pair is a self-loop");
        states.push_back(c.from < c.to ? EdgeState::Forward : EdgeState::Reverse);
    }
    return states;
}

std::vector<EdgeId> coordinates_to_edge_indices(std::span<const Arc> coords,
                                                const CandidateGraph& g) {
    std::vector<EdgeId> ids;
    ids.reserve(coords.size());
    for (const Arc& c : coords) {
        const auto idx = g.find(c.from, c.to);
        if (idx < 0) {
            throw InputError("pair (" + std::to_string(c.from + 1) + ", " +
                             std::to_string(c.to + 1) + ") is not a candidate edge");
        }
        ids.push_back(static_cast<EdgeId>(idx));
    }
    return ids;
}

CycleCode cycle_decimal(std::span<const EdgeId> edge_indices,
                        std::span<const EdgeState> edge_states, std::size_t edge_count) {
    if (edge_indices.size() != edge_states.size()) {
        throw InputError("cycle edge indices and states differ in length");
    }
    std::vector<EdgeId> seen(edge_indices.begin(), edge_indices.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw InputError("cycle edge indices must be distinct");
    }
    CycleCode total = 0;
    for (std::size_t i = 0; i < edge_indices.size(); ++i) {
        const EdgeId e = edge_indices[i];
        if (e >= edge_count) throw InputError("cycle edge index out of range");
        if (edge_states[i] == EdgeState::Absent) {
            throw InputError("an absent edge cannot be part of a directed cycle");
        }
        const unsigned k = static_cast<unsigned>(e + 1);
        if (edge_states[i] == EdgeState::Reverse) total += boost::multiprecision::pow(CycleCode(3), k);
        total += k;
    }
    return total;
}

namespace {

// Rotates a trimmed branch so it starts at its smallest node.
Branch canonical_rotation(const Branch& trimmed) {
    Branch ring(trimmed.begin(), trimmed.end() - 1);
    const auto min_it = std::min_element(ring.begin(), ring.end());
    std::rotate(ring.begin(), min_it, ring.end());
    ring.push_back(ring.front());
    return ring;
}

DirectedCycle cycle_from_trimmed(const Branch& trimmed, const CandidateGraph& g) {
    const Branch ring = canonical_rotation(trimmed);
    const auto coords = branch_to_coordinates(ring);
    DirectedCycle c;
    c.edge_states = coordinates_to_states(coords);
    c.edge_indices = coordinates_to_edge_indices(coords, g);
    c.decimal = cycle_decimal(c.edge_indices, c.edge_states, g.edge_count());
    return c;
}

bool cycle_less(const DirectedCycle& a, const DirectedCycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.decimal < b.decimal;
}

class BranchGrower {
public:
    BranchGrower(const AdjacencyMatrix& a, const CandidateGraph& g, const ReducedAdjacency& reduced)
        : g_(g), children_(a.size()), on_branch_(a.size(), false), reached_(a.size(), false) {
        std::vector<bool> alive(a.size(), false);
        for (NodeId v : reduced.survivors) alive[v] = true;
        // Children in ascending node order.
        for (NodeId u : reduced.survivors) {
            for (NodeId v = 0; v < a.size(); ++v) {
                if (alive[v] && a(u, v)) children_[u].push_back(v);
            }
        }
    }

    std::vector<DirectedCycle> run(const std::vector<NodeId>& survivors) {
        // A tree from one root yields every cycle reachable from it; further
        // roots are only needed for survivors no earlier tree reached.
        for (NodeId root : survivors) {
            if (reached_[root]) continue;
            branch_.assign(1, root);
            grow();
        }
        std::vector<DirectedCycle> out;
        out.reserve(found_.size());
        for (auto& [key, cycle] : found_) out.push_back(std::move(cycle));
        std::sort(out.begin(), out.end(), cycle_less);
        return out;
    }

private:
    void grow() {
        const NodeId u = branch_.back();
        reached_[u] = true;
        on_branch_[u] = true;
        for (NodeId c : children_[u]) {
            if (on_branch_[c]) {
                branch_.push_back(c);
                record(trim_branch(branch_));
                branch_.pop_back();
            } else {
                branch_.push_back(c);
                grow();
                branch_.pop_back();
            }
        }
        on_branch_[u] = false;
    }

    void record(const Branch& trimmed) {
        if (trimmed.size() < 4) return;  // fewer than three edges
        std::vector<NodeId> key(trimmed.begin(), trimmed.end() - 1);
        std::sort(key.begin(), key.end());
        // Node set plus one orientation fixes a simple directed cycle of a
        // graph without reciprocal arcs only up to the traversal; key on the
        // edge set instead.
        std::vector<EdgeId> edge_key;
        edge_key.reserve(trimmed.size() - 1);
        for (std::size_t i = 0; i + 1 < trimmed.size(); ++i) {
            const auto idx = g_.find(trimmed[i], trimmed[i + 1]);
            if (idx < 0) {
                throw InputError("directed edge (" + std::to_string(trimmed[i] + 1) + ", " +
                                 std::to_string(trimmed[i + 1] + 1) +
                                 ") is not an orientation of a candidate edge");
            }
            edge_key.push_back(static_cast<EdgeId>(idx));
        }
        std::sort(edge_key.begin(), edge_key.end());
        if (found_.contains(edge_key)) return;
        found_.emplace(std::move(edge_key), cycle_from_trimmed(trimmed, g_));
    }

    const CandidateGraph& g_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<bool> on_branch_;
    std::vector<bool> reached_;
    Branch branch_;
    std::map<std::vector<EdgeId>, DirectedCycle> found_;
};

}  // namespace

std::vector<DirectedCycle> find_directed_cycles(const AdjacencyMatrix& a, const CandidateGraph& g) {
    if (a.size() != g.node_count()) {
        throw InputError("adjacency matrix size does not match the candidate graph");
    }
    for (NodeId j = 0; j < a.size(); ++j) {
        for (NodeId k = 0; k < a.size(); ++k) {
            if (a(j, k) && !g.contains(j, k)) {
                throw InputError("directed edge (" + std::to_string(j + 1) + ", " +
                                 std::to_string(k + 1) + ") is not a candidate edge");
            }
            if (a(j, k) && a(k, j)) throw InputError("adjacency matrix has a reciprocal pair");
        }
    }
    const ReducedAdjacency reduced = reduce_adjacency(a);
    BranchGrower grower(a, g, reduced);
    return grower.run(reduced.survivors);
}

std::size_t CycleCatalog::repair_round_cap() const {
    return 100 * ((overflowed_ ? cap_ : entries_.size()) + 1);
}

namespace {

// Depth-first enumeration of simple cycles of the undirected skeleton.
// Each cycle is reported once: it starts at its smallest node and its
// second node is smaller than its last.
class SkeletonCycleEnumerator {
public:
    SkeletonCycleEnumerator(const CandidateGraph& g, std::size_t cap)
        : g_(g), cap_(cap), on_path_(g.node_count(), false) {}

    // Returns false on overflow.
    bool run() {
        for (NodeId s = 0; s < g_.node_count(); ++s) {
            start_ = s;
            path_.assign(1, s);
            on_path_[s] = true;
            if (!extend()) return false;
            on_path_[s] = false;
        }
        return true;
    }

    std::vector<std::vector<NodeId>>& rings() { return rings_; }

private:
    bool extend() {
        const NodeId u = path_.back();
        for (EdgeId e : g_.incident(u)) {
            const auto& edge = g_.edge(e);
            const NodeId v = edge.lo == u ? edge.hi : edge.lo;
            if (v == start_ && path_.size() >= 3 && path_[1] < path_.back()) {
                rings_.push_back(path_);
                if (rings_.size() > cap_) return false;
                continue;
            }
            if (v <= start_ || on_path_[v]) continue;
            path_.push_back(v);
            on_path_[v] = true;
            const bool ok = extend();
            on_path_[v] = false;
            path_.pop_back();
            if (!ok) return false;
        }
        return true;
    }

    const CandidateGraph& g_;
    std::size_t cap_;
    std::vector<bool> on_path_;
    std::vector<NodeId> path_;
    NodeId start_ = 0;
    std::vector<std::vector<NodeId>> rings_;
};

}  // namespace

CycleCatalog build_cycle_catalog(const CandidateGraph& g, std::size_t cap) {
    CycleCatalog catalog;
    catalog.graph_ = g;
    catalog.cap_ = cap;

    SkeletonCycleEnumerator enumerator(g, cap);
    if (!enumerator.run()) {
        catalog.overflowed_ = true;
        return catalog;
    }

    for (auto& ring : enumerator.rings()) {
        CatalogEntry entry;
        Branch forward(ring.begin(), ring.end());
        forward.push_back(ring.front());
        Branch backward(forward.rbegin(), forward.rend());
        entry.orientations[0] = cycle_from_trimmed(forward, g);
        entry.orientations[1] = cycle_from_trimmed(backward, g);
        entry.edges = entry.orientations[0].edge_indices;
        std::sort(entry.edges.begin(), entry.edges.end());
        catalog.entries_.push_back(std::move(entry));
    }
    std::sort(catalog.entries_.begin(), catalog.entries_.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
                  return a.edges < b.edges;
              });

    std::set<std::pair<std::size_t, CycleCode>> signatures;
    for (const auto& entry : catalog.entries_) {
        for (const auto& c : entry.orientations) {
            if (!signatures.emplace(c.length(), c.decimal).second) ++catalog.collisions_;
        }
    }
    return catalog;
}

std::vector<DirectedCycle> detect_cycles(std::span<const EdgeState> s, const CycleCatalog& catalog) {
    const CandidateGraph& g = catalog.graph();
    if (is_acyclic(g, s)) return {};
    if (catalog.overflowed()) return find_directed_cycles(states_to_adjacency(g, s), g);
    std::vector<DirectedCycle> matched;
    for (const auto& entry : catalog.entries()) {
        for (const auto& c : entry.orientations) {
            if (c.present_in(s)) {
                matched.push_back(c);
                break;
            }
        }
    }
    return matched;
}

EdgeStateVector remove_cycles(EdgeStateVector s, const CycleCatalog& catalog, const Prior& prior,
                              const ConstraintSet& constraints, Rng& rng) {
    const std::size_t round_cap = catalog.repair_round_cap();
    for (std::size_t round = 0;; ++round) {
        const auto cycles = detect_cycles(s, catalog);
        if (cycles.empty()) return s;
        if (round >= round_cap) {
            throw GuardExceededError("directed cycles persist after " + std::to_string(round_cap) +
                                     " repair rounds");
        }
        for (const auto& cycle : cycles) {
            // An earlier repair in this round may already have broken it.
            if (!cycle.present_in(s)) continue;
            std::vector<EdgeId> changeable;
            for (EdgeId e : cycle.edge_indices) {
                if (prior.is_mutable(constraints.allowed(e))) changeable.push_back(e);
            }
            if (changeable.empty()) {
                throw UnsatisfiableError("a directed cycle has no edge that constraints allow to change");
            }
            const EdgeId e = changeable[rng.index(changeable.size())];
            s[e] = prior.draw_change(s[e], constraints.allowed(e), rng);
        }
    }
}

}  // namespace edgestate
