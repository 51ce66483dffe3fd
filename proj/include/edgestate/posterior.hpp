#pragma once

#include <array>
#include <vector>

#include "edgestate/graph.hpp"

namespace edgestate {

using StateProbabilities = std::array<double, 3>;  // (forward, reverse, absent)

// Per-edge state probabilities, aligned with a candidate edge list.
struct PosteriorTable {
    std::vector<CandidateEdge> edges;
    std::vector<StateProbabilities> rows;

    std::size_t size() const { return rows.size(); }
    double presence(std::size_t e) const { return rows[e][0] + rows[e][1]; }
};

}  // namespace edgestate
