#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edgestate/cycles.hpp"
#include "edgestate/graph.hpp"
#include "edgestate/posterior.hpp"
#include "edgestate/prior.hpp"
#include "edgestate/rng.hpp"
#include "edgestate/score.hpp"

namespace edgestate {

struct McmcConfig {
    std::size_t iterations = 30000;
    double burn_in_fraction = 0.2;
    std::size_t step_size = 120;
    std::uint64_t seed = 1;
    // Check acyclicity of every accepted state; always on in debug builds.
    bool verify_acyclic = false;

    std::size_t burn_in() const;
    std::size_t retained_count() const;
    // Throws InputError unless burn_in_fraction is in [0, 1), step_size > 0
    // and at least one sample is retained.
    void validate() const;
};

struct ChainState {
    EdgeStateVector s;
    std::vector<double> node_loglik;  // one entry per node
    double loglik = 0.0;
    double log_prior = 0.0;
};

struct EdgeChange {
    EdgeId edge = 0;
    EdgeState from = EdgeState::Absent;
    EdgeState to = EdgeState::Absent;

    friend bool operator==(const EdgeChange&, const EdgeChange&) = default;
};

struct Proposal {
    EdgeStateVector s;
    std::vector<EdgeChange> diff;  // net change against the current state, by edge index
};

struct TraceRow {
    std::size_t iteration = 0;  // 1-based
    double loglik = 0.0;
    EdgeStateVector s;
};

struct Trace {
    std::vector<TraceRow> rows;
    std::size_t iterations = 0;
    std::size_t accepted = 0;
};

// Everything a chain reads but never writes.
struct Model {
    const DataMatrix& data;
    const CandidateGraph& graph;
    const Prior& prior;
    const ConstraintSet& constraints;
    const CycleCatalog& catalog;
};

std::vector<EdgeChange> state_diff(std::span<const EdgeState> from, std::span<const EdgeState> to);

// Scores s from scratch (through the cache).
ChainState score_state(const Model& model, EdgeStateVector s, ScoreCache& cache);

// Draws each edge from its restricted prior, then removes cycles.
ChainState init_state(const Model& model, ScoreCache& cache, Rng& rng);

// Picks n ~ B(m', 1/m') edges (n >= 1) among the m' edges with two or more
// reachable states, moves each to another state with probability
// proportional to the prior, and repairs cycles.
Proposal propose(std::span<const EdgeState> current, const CandidateGraph& g, const Prior& prior,
                 const ConstraintSet& constraints, const CycleCatalog& catalog, Rng& rng);

// sum over the diff of log Pr(new -> old) - log Pr(old -> new).
double log_transition_ratio(std::span<const EdgeChange> diff, const Prior& prior,
                            const ConstraintSet& constraints);

// min(0, prior ratio + likelihood ratio + transition ratio), all in logs.
double log_acceptance(const ChainState& current, const ChainState& proposed,
                      std::span<const EdgeChange> diff, const Prior& prior,
                      const ConstraintSet& constraints);

// Rescores only the nodes touched by diff.
ChainState apply_diff(const Model& model, const ChainState& current, EdgeStateVector s,
                      std::span<const EdgeChange> diff, ScoreCache& cache);

Trace run(const Model& model, const McmcConfig& config);
Trace run(const DataMatrix& data, const CandidateGraph& g, const Prior& prior,
          const McmcConfig& config, const ConstraintSet& constraints = {});

// Relative frequencies of the three states per edge. Throws InputError on
// an empty trace.
PosteriorTable posterior_from_trace(const Trace& trace, const CandidateGraph& g);

}  // namespace edgestate
