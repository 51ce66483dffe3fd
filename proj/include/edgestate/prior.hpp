#pragma once

#include <array>
#include <span>

#include "edgestate/graph.hpp"
#include "edgestate/rng.hpp"

namespace edgestate {

// Prior probability of each edge state, shared by all candidate edges.
class Prior {
public:
    // Throws InputError unless every entry is >= 0 and the sum is 1 within 1e-9.
    Prior(double p0, double p1, double p2);

    static Prior sparse_default() { return Prior(0.05, 0.05, 0.9); }
    static Prior uniform() { return Prior(1.0 / 3, 1.0 / 3, 1.0 / 3); }

    double operator[](EdgeState s) const { return p_[to_int(s)]; }
    double operator[](int k) const { return p_[k]; }
    const std::array<double, 3>& values() const { return p_; }

    // States an edge can take: allowed by the constraint and with positive prior.
    ConstraintSet::Allowed effective(const ConstraintSet::Allowed& allowed) const;
    // True when the edge has at least two effective states.
    bool is_mutable(const ConstraintSet::Allowed& allowed) const;

    // Probability that an edge leaving `from` lands on `to`: p_to over the
    // summed prior of the other effective states. Throws InputError when `to`
    // is not reachable (same state, disallowed or zero prior).
    double change_probability(EdgeState from, EdgeState to,
                              const ConstraintSet::Allowed& allowed) const;

    // log of the edge's prior restricted and renormalized to its allowed set.
    double log_edge_prior(EdgeState s, const ConstraintSet::Allowed& allowed) const;

    // Draw from the prior restricted to the effective states.
    EdgeState draw(const ConstraintSet::Allowed& allowed, Rng& rng) const;
    // Draw a different state with probability proportional to the prior.
    EdgeState draw_change(EdgeState from, const ConstraintSet::Allowed& allowed, Rng& rng) const;

    friend bool operator==(const Prior&, const Prior&) = default;

private:
    std::array<double, 3> p_;
};

// Sum over edges of log_edge_prior: the log graph prior.
double log_graph_prior(const Prior& prior, const ConstraintSet& constraints,
                       std::span<const EdgeState> s);

}  // namespace edgestate
