#include "edgestate/prior.hpp"

#include <cmath>
#include <string>

#include "edgestate/errors.hpp"

namespace edgestate {

Prior::Prior(double p0, double p1, double p2) : p_{p0, p1, p2} {
    for (double p : p_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InputError("prior probabilities must be finite and non-negative");
        }
    }
    if (std::abs(p0 + p1 + p2 - 1.0) > 1e-9) {
        throw InputError("prior probabilities must sum to 1, got " +
                         std::to_string(p0 + p1 + p2));
    }
}

ConstraintSet::Allowed Prior::effective(const ConstraintSet::Allowed& allowed) const {
    return {allowed[0] && p_[0] > 0, allowed[1] && p_[1] > 0, allowed[2] && p_[2] > 0};
}

bool Prior::is_mutable(const ConstraintSet::Allowed& allowed) const {
    const auto eff = effective(allowed);
    return (eff[0] + eff[1] + eff[2]) >= 2;
}

double Prior::change_probability(EdgeState from, EdgeState to,
                                 const ConstraintSet::Allowed& allowed) const {
    const auto eff = effective(allowed);
    const int f = to_int(from);
    const int t = to_int(to);
    if (f == t || !eff[t]) {
        throw InputError("edge cannot change from state " + std::to_string(f) + " to state " +
                         std::to_string(t));
    }
    double denom = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (k != f && eff[k]) denom += p_[k];
    }
    return p_[t] / denom;
}

double Prior::log_edge_prior(EdgeState s, const ConstraintSet::Allowed& allowed) const {
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (allowed[k]) total += p_[k];
    }
    return std::log(p_[to_int(s)]) - std::log(total);
}

namespace {

EdgeState draw_weighted(const std::array<double, 3>& w, Rng& rng) {
    const double total = w[0] + w[1] + w[2];
    if (!(total > 0.0)) throw UnsatisfiableError("no edge state has positive probability");
    const double u = rng.uniform() * total;
    double acc = 0.0;
    int last = -1;
    for (int k = 0; k < 3; ++k) {
        if (w[k] <= 0.0) continue;
        last = k;
        acc += w[k];
        if (u < acc) return static_cast<EdgeState>(k);
    }
    return static_cast<EdgeState>(last);
}

}  // namespace

EdgeState Prior::draw(const ConstraintSet::Allowed& allowed, Rng& rng) const {
    const auto eff = effective(allowed);
    return draw_weighted({eff[0] ? p_[0] : 0.0, eff[1] ? p_[1] : 0.0, eff[2] ? p_[2] : 0.0}, rng);
}

EdgeState Prior::draw_change(EdgeState from, const ConstraintSet::Allowed& allowed,
                             Rng& rng) const {
    auto eff = effective(allowed);
    eff[to_int(from)] = false;
    return draw_weighted({eff[0] ? p_[0] : 0.0, eff[1] ? p_[1] : 0.0, eff[2] ? p_[2] : 0.0}, rng);
}

double log_graph_prior(const Prior& prior, const ConstraintSet& constraints,
                       std::span<const EdgeState> s) {
    double total = 0.0;
    for (EdgeId e = 0; e < s.size(); ++e) total += prior.log_edge_prior(s[e], constraints.allowed(e));
    return total;
}

}  // namespace edgestate
