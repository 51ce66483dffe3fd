#pragma once

#include <span>
#include <vector>

#include "edgestate/posterior.hpp"

namespace edgestate {

// (1/3) sum_k (q_k - p_k)^2. Throws InputError unless both rows are
// probability vectors (entries in [0, 1], sum 1 within 1e-6).
double emse(const StateProbabilities& expected, const StateProbabilities& posterior);

// Copies `expected` onto the edge list of `posterior`, filling (0, 0, 1)
// for posterior edges the expectation does not cover. Throws InputError if
// an expected edge that may be present is missing from the posterior.
PosteriorTable align_expected(const PosteriorTable& expected, const PosteriorTable& posterior);

// Mean eMSE over edges; the two tables must list the same edges.
double mse1(const PosteriorTable& expected, const PosteriorTable& posterior);

// Squared deviations of the two directed probabilities summed over the
// true edges (expected absent probability 0), divided by twice their count.
double mse2(const PosteriorTable& expected, const PosteriorTable& posterior);

// Squared deviations of directed probabilities over all b^2 - b ordered
// pairs; pairs that are not candidates contribute zero on both sides.
double mse3(const PosteriorTable& expected, const PosteriorTable& posterior, std::size_t b);

struct PrecisionPower {
    double precision = 1.0;
    double power = 0.0;
};

// Edges with forward + reverse probability above the cutoff count as
// inferred. Precision is 1 when nothing is inferred; power is 1 when
// truth is empty.
PrecisionPower precision_power(const PosteriorTable& posterior,
                               std::span<const CandidateEdge> true_edges, double cutoff = 0.5);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // n - 1 divisor; 0 for a single value
};
MeanSd mean_sd(std::span<const double> values);

}  // namespace edgestate
