#include "edgestate/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgestate/errors.hpp"

namespace edgestate {

std::size_t McmcConfig::burn_in() const {
    return static_cast<std::size_t>(std::floor(burn_in_fraction * static_cast<double>(iterations)));
}

std::size_t McmcConfig::retained_count() const {
    if (step_size == 0) return 0;
    return (iterations - burn_in()) / step_size;
}

void McmcConfig::validate() const {
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
        throw InputError("burn-in fraction must lie in [0, 1)");
    }
    if (step_size == 0) throw InputError("step size must be positive");
    if (retained_count() == 0) {
        throw InputError("no samples retained: " + std::to_string(iterations) +
                         " iterations, burn-in " + std::to_string(burn_in()) + ", step size " +
                         std::to_string(step_size));
    }
}

std::vector<EdgeChange> state_diff(std::span<const EdgeState> from, std::span<const EdgeState> to) {
    if (from.size() != to.size()) throw InputError("state vectors differ in length");
    std::vector<EdgeChange> diff;
    for (EdgeId e = 0; e < from.size(); ++e) {
        if (from[e] != to[e]) diff.push_back({e, from[e], to[e]});
    }
    return diff;
}

namespace {

std::vector<NodeId> parents_of(const CandidateGraph& g, std::span<const EdgeState> s, NodeId v) {
    std::vector<NodeId> parents;
    for (EdgeId e : g.incident(v)) {
        if (s[e] == EdgeState::Absent) continue;
        const Arc a = arc_of(g.edge(e), s[e]);
        if (a.to == v) parents.push_back(a.from);
    }
    std::sort(parents.begin(), parents.end());
    return parents;
}

double sum_in_order(const std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x;
    return total;
}

}  // namespace

ChainState score_state(const Model& model, EdgeStateVector s, ScoreCache& cache) {
    if (s.size() != model.graph.edge_count()) throw InputError("state length does not match the graph");
    if (model.data.cols() != model.graph.node_count()) {
        throw InputError("data has " + std::to_string(model.data.cols()) +
                         " columns but the graph has " + std::to_string(model.graph.node_count()) +
                         " nodes");
    }
    ChainState st;
    st.node_loglik.resize(model.graph.node_count());
    for (NodeId v = 0; v < model.graph.node_count(); ++v) {
        st.node_loglik[v] = cache.node_score(model.data, v, parents_of(model.graph, s, v));
    }
    st.loglik = sum_in_order(st.node_loglik);
    st.log_prior = log_graph_prior(model.prior, model.constraints, s);
    st.s = std::move(s);
    return st;
}

ChainState init_state(const Model& model, ScoreCache& cache, Rng& rng) {
    EdgeStateVector s(model.graph.edge_count());
    for (EdgeId e = 0; e < s.size(); ++e) s[e] = model.prior.draw(model.constraints.allowed(e), rng);
    s = remove_cycles(std::move(s), model.catalog, model.prior, model.constraints, rng);
    return score_state(model, std::move(s), cache);
}

Proposal propose(std::span<const EdgeState> current, const CandidateGraph& g, const Prior& prior,
                 const ConstraintSet& constraints, const CycleCatalog& catalog, Rng& rng) {
    if (current.size() != g.edge_count()) throw InputError("state length does not match the graph");
    std::vector<EdgeId> mutable_edges;
    for (EdgeId e = 0; e < current.size(); ++e) {
        if (prior.is_mutable(constraints.allowed(e))) mutable_edges.push_back(e);
    }
    Proposal p;
    p.s.assign(current.begin(), current.end());
    const std::size_t m = mutable_edges.size();
    if (m == 0) return p;

    const double q = 1.0 / static_cast<double>(m);
    std::size_t n = 0;
    while (n == 0) {
        for (std::size_t i = 0; i < m; ++i) n += rng.bernoulli(q);
    }
    // Partial Fisher-Yates: the first n slots become a uniform n-subset.
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.index(m - i);
        std::swap(mutable_edges[i], mutable_edges[j]);
        const EdgeId e = mutable_edges[i];
        p.s[e] = prior.draw_change(p.s[e], constraints.allowed(e), rng);
    }
    p.s = remove_cycles(std::move(p.s), catalog, prior, constraints, rng);
    p.diff = state_diff(current, p.s);
    return p;
}

double log_transition_ratio(std::span<const EdgeChange> diff, const Prior& prior,
                            const ConstraintSet& constraints) {
    double total = 0.0;
    for (const EdgeChange& c : diff) {
        const auto& allowed = constraints.allowed(c.edge);
        total += std::log(prior.change_probability(c.to, c.from, allowed)) -
                 std::log(prior.change_probability(c.from, c.to, allowed));
    }
    return total;
}

double log_acceptance(const ChainState& current, const ChainState& proposed,
                      std::span<const EdgeChange> diff, const Prior& prior,
                      const ConstraintSet& constraints) {
    if (diff.empty()) return 0.0;
    const double log_ratio = (proposed.log_prior - current.log_prior) +
                             (proposed.loglik - current.loglik) +
                             log_transition_ratio(diff, prior, constraints);
    return std::min(0.0, log_ratio);
}

ChainState apply_diff(const Model& model, const ChainState& current, EdgeStateVector s,
                      std::span<const EdgeChange> diff, ScoreCache& cache) {
    ChainState next;
    next.node_loglik = current.node_loglik;
    next.log_prior = current.log_prior;
    std::vector<NodeId> touched;
    for (const EdgeChange& c : diff) {
        const auto& edge = model.graph.edge(c.edge);
        touched.push_back(edge.lo);
        touched.push_back(edge.hi);
        const auto& allowed = model.constraints.allowed(c.edge);
        next.log_prior += model.prior.log_edge_prior(c.to, allowed) -
                          model.prior.log_edge_prior(c.from, allowed);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (NodeId v : touched) {
        next.node_loglik[v] = cache.node_score(model.data, v, parents_of(model.graph, s, v));
    }
    next.loglik = sum_in_order(next.node_loglik);
    next.s = std::move(s);
    return next;
}

Trace run(const Model& model, const McmcConfig& config) {
    config.validate();
#ifndef NDEBUG
    const bool verify = true;
#else
    const bool verify = config.verify_acyclic;
#endif
    Rng rng(config.seed);
    ScoreCache cache;
    ChainState state = init_state(model, cache, rng);

    Trace trace;
    trace.iterations = config.iterations;
    trace.rows.reserve(config.retained_count());
    const std::size_t burn = config.burn_in();
    for (std::size_t t = 1; t <= config.iterations; ++t) {
        Proposal p = propose(state.s, model.graph, model.prior, model.constraints, model.catalog, rng);
        if (!p.diff.empty()) {
            ChainState next = apply_diff(model, state, std::move(p.s), p.diff, cache);
            const double log_alpha =
                log_acceptance(state, next, p.diff, model.prior, model.constraints);
            // 1 - u lies in (0, 1], so its log is finite.
            if (std::log(1.0 - rng.uniform()) <= log_alpha) {
                state = std::move(next);
                ++trace.accepted;
            }
        } else {
            rng.uniform();  // the accept draw is consumed either way
            ++trace.accepted;
        }
        if (verify && !is_acyclic(model.graph, state.s)) {
            throw GuardExceededError("chain entered a cyclic state at iteration " + std::to_string(t));
        }
        if (t > burn && (t - burn) % config.step_size == 0) {
            trace.rows.push_back({t, state.loglik, state.s});
        }
    }
    return trace;
}

Trace run(const DataMatrix& data, const CandidateGraph& g, const Prior& prior,
          const McmcConfig& config, const ConstraintSet& constraints) {
    const CycleCatalog catalog = build_cycle_catalog(g);
    const Model model{data, g, prior, constraints, catalog};
    return run(model, config);
}

PosteriorTable posterior_from_trace(const Trace& trace, const CandidateGraph& g) {
    if (trace.rows.empty()) throw InputError("trace holds no retained samples");
    const std::size_t m = g.edge_count();
    std::vector<std::array<std::size_t, 3>> counts(m, {0, 0, 0});
    for (const auto& row : trace.rows) {
        if (row.s.size() != m) throw InputError("trace state length does not match the graph");
        for (EdgeId e = 0; e < m; ++e) ++counts[e][to_int(row.s[e])];
    }
    PosteriorTable table;
    table.edges = g.edges();
    table.rows.resize(m);
    const double n = static_cast<double>(trace.rows.size());
    for (EdgeId e = 0; e < m; ++e) {
        for (int k = 0; k < 3; ++k) table.rows[e][k] = static_cast<double>(counts[e][k]) / n;
    }
    return table;
}

}  // namespace edgestate
