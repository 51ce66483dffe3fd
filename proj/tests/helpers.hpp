#pragma once

#include <vector>

#include "edgestate/graph.hpp"
#include "edgestate/rng.hpp"

namespace testing {

using namespace edgestate;

// 1-based node pairs.
inline CandidateGraph graph_of(std::size_t b, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<CandidateEdge> edges;
    for (auto [u, v] : pairs) edges.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
    return CandidateGraph(b, std::move(edges));
}

inline EdgeStateVector states(std::initializer_list<int> v) {
    EdgeStateVector s;
    for (int x : v) s.push_back(edge_state_from_int(x));
    return s;
}

inline CandidateGraph random_skeleton(std::size_t b, double density, Rng& rng) {
    std::vector<CandidateEdge> edges;
    for (NodeId j = 0; j < b; ++j) {
        for (NodeId k = j + 1; k < b; ++k) {
            if (rng.bernoulli(density)) edges.push_back({j, k});
        }
    }
    return CandidateGraph(b, std::move(edges));
}

inline EdgeStateVector random_orientation(std::size_t m, Rng& rng) {
    EdgeStateVector s(m);
    for (auto& x : s) x = rng.bernoulli(0.5) ? EdgeState::Reverse : EdgeState::Forward;
    return s;
}

}  // namespace testing
