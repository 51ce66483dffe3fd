#include "edgestate/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edgestate/errors.hpp"

namespace edgestate {

namespace {

bool is_present(const CandidateGraph& g, std::span<const EdgeState> s, NodeId u, NodeId v) {
    const auto e = g.find(u, v);
    return e >= 0 && s[static_cast<EdgeId>(e)] != EdgeState::Absent;
}

void check_length(const CandidateGraph& g, std::span<const EdgeState> s) {
    if (s.size() != g.edge_count()) {
        throw InputError("state has " + std::to_string(s.size()) + " entries but the graph has " +
                         std::to_string(g.edge_count()) + " edges");
    }
}

}  // namespace

std::vector<EdgeStateVector> enumerate_acyclic_orientations(const CandidateGraph& g) {
    const std::size_t m = g.edge_count();
    if (m > kMaxOrientationEdges) {
        throw GuardExceededError("orientation enumeration limited to " +
                                 std::to_string(kMaxOrientationEdges) + " edges, got " +
                                 std::to_string(m));
    }
    std::vector<EdgeStateVector> out;
    EdgeStateVector s(m);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        for (EdgeId e = 0; e < m; ++e) s[e] = ((code >> e) & 1U) ? EdgeState::Reverse : EdgeState::Forward;
        if (is_acyclic(g, s)) out.push_back(s);
    }
    return out;
}

std::vector<VStructure> v_structures(const CandidateGraph& g, std::span<const EdgeState> s) {
    check_length(g, s);
    const auto parents = parent_sets(g, s);
    std::vector<VStructure> out;
    for (NodeId c = 0; c < parents.size(); ++c) {
        const auto& pa = parents[c];
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = i + 1; j < pa.size(); ++j) {
                if (!is_present(g, s, pa[i], pa[j])) out.push_back({pa[i], c, pa[j]});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<EdgeStateVector> equivalence_class(std::span<const EdgeState> true_dag,
                                               const CandidateGraph& g) {
    check_length(g, true_dag);
    if (!is_acyclic(g, true_dag)) throw InputError("true graph has a directed cycle");
    std::vector<EdgeId> present;
    for (EdgeId e = 0; e < true_dag.size(); ++e) {
        if (true_dag[e] != EdgeState::Absent) present.push_back(e);
    }
    if (present.size() > kMaxOrientationEdges) {
        throw GuardExceededError("equivalence class enumeration limited to " +
                                 std::to_string(kMaxOrientationEdges) + " present edges");
    }
    const auto target = v_structures(g, true_dag);
    std::vector<EdgeStateVector> members;
    EdgeStateVector s(true_dag.begin(), true_dag.end());
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << present.size()); ++code) {
        for (std::size_t i = 0; i < present.size(); ++i) {
            s[present[i]] = ((code >> i) & 1U) ? EdgeState::Reverse : EdgeState::Forward;
        }
        if (is_acyclic(g, s) && v_structures(g, s) == target) members.push_back(s);
    }
    return members;
}

PosteriorTable expected_edge_probabilities(std::span<const EdgeState> true_dag,
                                           const CandidateGraph& g) {
    const auto members = equivalence_class(true_dag, g);
    PosteriorTable table;
    table.edges = g.edges();
    table.rows.assign(g.edge_count(), {0.0, 0.0, 0.0});
    std::vector<std::array<std::size_t, 3>> counts(g.edge_count(), {0, 0, 0});
    for (const auto& s : members) {
        for (EdgeId e = 0; e < s.size(); ++e) ++counts[e][to_int(s[e])];
    }
    const double n = static_cast<double>(members.size());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        for (int k = 0; k < 3; ++k) table.rows[e][k] = static_cast<double>(counts[e][k]) / n;
    }
    return table;
}

PosteriorTable exact_posterior(const DataMatrix& data, const CandidateGraph& g, const Prior& prior,
                               const ConstraintSet& constraints) {
    const std::size_t m = g.edge_count();
    if (m > kMaxExactPosteriorEdges) {
        throw GuardExceededError("exact posterior limited to " +
                                 std::to_string(kMaxExactPosteriorEdges) + " edges, got " +
                                 std::to_string(m));
    }
    if (data.cols() != g.node_count()) throw InputError("data columns do not match the graph");

    std::vector<ConstraintSet::Allowed> eff(m);
    for (EdgeId e = 0; e < m; ++e) eff[e] = prior.effective(constraints.allowed(e));

    std::size_t total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= 3;

    ScoreCache cache;
    std::vector<EdgeStateVector> states;
    std::vector<double> logw;
    EdgeStateVector s(m);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        bool ok = true;
        for (EdgeId e = 0; e < m; ++e) {
            const int k = static_cast<int>(c % 3);
            c /= 3;
            s[e] = static_cast<EdgeState>(k);
            ok = ok && eff[e][k];
        }
        if (!ok || !is_acyclic(g, s)) continue;
        states.push_back(s);
        logw.push_back(log_graph_prior(prior, constraints, s) + graph_log_likelihood(data, g, s, &cache));
    }
    if (states.empty()) throw UnsatisfiableError("no acyclic state satisfies the constraints");

    const double top = *std::max_element(logw.begin(), logw.end());
    double norm = 0.0;
    PosteriorTable table;
    table.edges = g.edges();
    table.rows.assign(m, {0.0, 0.0, 0.0});
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double w = std::exp(logw[i] - top);
        norm += w;
        for (EdgeId e = 0; e < m; ++e) table.rows[e][to_int(states[i][e])] += w;
    }
    for (auto& row : table.rows) {
        for (double& p : row) p /= norm;
    }
    return table;
}

Rational RepairPaths::coefficient_sum() const {
    Rational total = 0;
    for (const auto& p : paths) total += p.coefficient;
    return total;
}

namespace {

class RepairPathSearch {
public:
    RepairPathSearch(std::span<const EdgeState> to, const CycleCatalog& catalog, const Prior& prior,
                     const ConstraintSet& constraints)
        : to_(to.begin(), to.end()), catalog_(catalog), prior_(prior), constraints_(constraints) {}

    void start(EdgeStateVector s, std::vector<bool> changed, RepairPath path) {
        next_round(std::move(s), std::move(changed), std::move(path), 0);
    }

    std::vector<RepairPath>& paths() { return paths_; }

private:
    void next_round(EdgeStateVector s, std::vector<bool> changed, RepairPath path,
                    std::size_t rounds) {
        auto cycles = detect_cycles(s, catalog_);
        if (cycles.empty()) {
            if (s == to_) paths_.push_back(std::move(path));
            return;
        }
        if (rounds >= catalog_.repair_round_cap()) {
            throw GuardExceededError("repair path search exceeded the round cap");
        }
        walk(cycles, 0, std::move(s), std::move(changed), std::move(path), rounds);
    }

    void walk(const std::vector<DirectedCycle>& cycles, std::size_t i, EdgeStateVector s,
              std::vector<bool> changed, RepairPath path, std::size_t rounds) {
        if (i == cycles.size()) {
            next_round(std::move(s), std::move(changed), std::move(path), rounds + 1);
            return;
        }
        const DirectedCycle& cycle = cycles[i];
        if (!cycle.present_in(s)) {
            walk(cycles, i + 1, std::move(s), std::move(changed), std::move(path), rounds);
            return;
        }
        std::size_t changeable = 0;
        for (EdgeId e : cycle.edge_indices) changeable += prior_.is_mutable(constraints_.allowed(e));
        for (EdgeId e : cycle.edge_indices) {
            // Only edges that still differ from the target, moved straight to it.
            if (changed[e] || s[e] == to_[e]) continue;
            EdgeStateVector s2 = s;
            s2[e] = to_[e];
            std::vector<bool> changed2 = changed;
            changed2[e] = true;
            RepairPath p2 = path;
            p2.repaired.push_back(e);
            p2.divisors.push_back(changeable);
            p2.coefficient /= changeable;
            walk(cycles, i + 1, std::move(s2), std::move(changed2), std::move(p2), rounds);
        }
    }

    EdgeStateVector to_;
    const CycleCatalog& catalog_;
    const Prior& prior_;
    const ConstraintSet& constraints_;
    std::vector<RepairPath> paths_;
};

}  // namespace

RepairPaths enumerate_repair_paths(std::span<const EdgeState> from, std::span<const EdgeState> to,
                                   const CycleCatalog& catalog, const Prior& prior,
                                   const ConstraintSet& constraints) {
    const CandidateGraph& g = catalog.graph();
    check_length(g, from);
    check_length(g, to);
    const std::size_t m = g.edge_count();
    if (m > kMaxRepairPathEdges) {
        throw GuardExceededError("repair path enumeration limited to " +
                                 std::to_string(kMaxRepairPathEdges) + " edges, got " +
                                 std::to_string(m));
    }
    std::size_t mutable_count = 0;
    for (EdgeId e = 0; e < m; ++e) mutable_count += prior.is_mutable(constraints.allowed(e));

    std::vector<EdgeId> diff;
    RepairPaths result;
    for (EdgeId e = 0; e < m; ++e) {
        if (from[e] == to[e]) continue;
        diff.push_back(e);
        result.change_probability *= prior.change_probability(from[e], to[e], constraints.allowed(e));
    }
    if (diff.empty()) {
        result.paths.push_back({{}, {}, {}, Rational(1)});
        return result;
    }

    RepairPathSearch search(to, catalog, prior, constraints);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << diff.size()); ++mask) {
        EdgeStateVector s(from.begin(), from.end());
        std::vector<bool> changed(m, false);
        RepairPath path;
        path.coefficient = 1;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (!((mask >> i) & 1U)) continue;
            const EdgeId e = diff[i];
            s[e] = to[e];
            changed[e] = true;
            path.proposed.push_back(e);
            path.divisors.push_back(mutable_count);
            path.coefficient /= mutable_count;
        }
        search.start(std::move(s), std::move(changed), std::move(path));
    }
    result.paths = std::move(search.paths());
    return result;
}

}  // namespace edgestate
