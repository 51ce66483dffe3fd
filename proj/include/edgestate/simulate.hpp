#pragma once

#include <cstddef>
#include <cstdint>

#include "edgestate/score.hpp"
#include "edgestate/topology.hpp"

namespace edgestate {

// Nodes in topological order, each beta * (sum of parents) + N(0, 1), zero
// intercepts. Columns are named T1..Tb. Throws InputError on a cyclic
// topology or n < 2.
DataMatrix simulate(const Topology& topo, std::size_t n, double beta, std::uint64_t seed);

}  // namespace edgestate
