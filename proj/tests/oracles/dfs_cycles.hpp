#pragma once

// Tiernan-style enumeration of simple directed cycles, independent of the
// library's branch-growing finder. Each cycle is reported once, rooted at its
// smallest node, as the sorted list of candidate-edge indices it uses.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "edgestate/graph.hpp"

namespace oracle {

class DfsCycleEnumerator {
public:
    explicit DfsCycleEnumerator(const edgestate::AdjacencyMatrix& a) : a_(a), on_path_(a.size(), false) {}

    // Node sequences, each starting at the cycle's smallest node.
    std::vector<std::vector<std::size_t>> cycles() {
        out_.clear();
        for (std::size_t s = 0; s < a_.size(); ++s) {
            start_ = s;
            path_ = {s};
            on_path_[s] = true;
            dfs(s);
            on_path_[s] = false;
        }
        return out_;
    }

private:
    void dfs(std::size_t u) {
        for (std::size_t v = 0; v < a_.size(); ++v) {
            if (!a_(u, v)) continue;
            if (v == start_) {
                if (path_.size() >= 2) out_.push_back(path_);
                continue;
            }
            if (v < start_ || on_path_[v]) continue;
            on_path_[v] = true;
            path_.push_back(v);
            dfs(v);
            path_.pop_back();
            on_path_[v] = false;
        }
    }

    const edgestate::AdjacencyMatrix& a_;
    std::vector<bool> on_path_;
    std::vector<std::size_t> path_;
    std::size_t start_ = 0;
    std::vector<std::vector<std::size_t>> out_;
};

// Sorted edge-index sets of every simple directed cycle of a.
inline std::vector<std::vector<std::size_t>> cycle_edge_sets(const edgestate::AdjacencyMatrix& a,
                                                             const edgestate::CandidateGraph& g) {
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& ring : DfsCycleEnumerator(a).cycles()) {
        std::vector<std::size_t> edges;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const std::size_t u = ring[i];
            const std::size_t v = ring[(i + 1) % ring.size()];
            edges.push_back(static_cast<std::size_t>(g.find(u, v)));
        }
        std::sort(edges.begin(), edges.end());
        sets.push_back(edges);
    }
    std::sort(sets.begin(), sets.end());
    return sets;
}

}  // namespace oracle
