#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edgestate/cycles.hpp"
#include "edgestate/graph.hpp"
#include "edgestate/posterior.hpp"
#include "edgestate/prior.hpp"
#include "edgestate/score.hpp"

namespace edgestate {

inline constexpr std::size_t kMaxOrientationEdges = 20;
inline constexpr std::size_t kMaxExactPosteriorEdges = 8;
inline constexpr std::size_t kMaxRepairPathEdges = 6;

// Acyclic members of the 2^m orientations of g, in binary counting order
// (edge 0 is the least significant digit).
std::vector<EdgeStateVector> enumerate_acyclic_orientations(const CandidateGraph& g);

// Collider a -> c <- b with a < b and a, b not joined by a present edge.
struct VStructure {
    NodeId a = 0;
    NodeId c = 0;
    NodeId b = 0;

    friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

// Sorted v-structures of the DAG given by s.
std::vector<VStructure> v_structures(const CandidateGraph& g, std::span<const EdgeState> s);

// DAGs with the same present edges and v-structures as true_dag. Edges absent
// in true_dag stay absent in every member. Throws InputError on a cyclic
// input and GuardExceededError past kMaxOrientationEdges present edges.
std::vector<EdgeStateVector> equivalence_class(std::span<const EdgeState> true_dag,
                                               const CandidateGraph& g);

// Per-edge fraction of class members in each state; absent edges get (0, 0, 1).
PosteriorTable expected_edge_probabilities(std::span<const EdgeState> true_dag,
                                           const CandidateGraph& g);

// Marginals of Pr(S | data) proportional to prior times plug-in likelihood over
// every acyclic state allowed by the constraints. Guard: m <= kMaxExactPosteriorEdges.
PosteriorTable exact_posterior(const DataMatrix& data, const CandidateGraph& g, const Prior& prior,
                               const ConstraintSet& constraints = {});

using Rational = boost::multiprecision::cpp_rational;

// One way a single proposal plus cycle repair turns `from` into `to`.
struct RepairPath {
    std::vector<EdgeId> proposed;      // edges changed by the proposal, ascending
    std::vector<EdgeId> repaired;      // edges changed by repair, in order
    std::vector<std::size_t> divisors; // c_j: mutable edge count per proposed edge,
                                       // then the repaired cycle's changeable edge count
    Rational coefficient;              // product of 1 / c_j
};

struct RepairPaths {
    std::vector<RepairPath> paths;
    double change_probability = 1.0;  // product of Pr(from_e -> to_e) over the diff

    Rational coefficient_sum() const;
};

// Every path in which the proposal sets a nonempty subset of the differing
// edges to their target states and repair rounds, visiting detected cycles
// in catalog order, set the rest. from == to gives one empty path with
// coefficient 1. Guard: m <= kMaxRepairPathEdges.
RepairPaths enumerate_repair_paths(std::span<const EdgeState> from, std::span<const EdgeState> to,
                                   const CycleCatalog& catalog, const Prior& prior,
                                   const ConstraintSet& constraints = {});

}  // namespace edgestate
