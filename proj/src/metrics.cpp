#include "edgestate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "edgestate/errors.hpp"

namespace edgestate {

namespace {

void check_row(const StateProbabilities& row) {
    for (double p : row) {
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw InputError("probability outside [0, 1]");
    }
    if (std::abs(row[0] + row[1] + row[2] - 1.0) > 1e-6) {
        throw InputError("probability row does not sum to 1");
    }
}

void check_same_edges(const PosteriorTable& a, const PosteriorTable& b) {
    if (a.edges != b.edges || a.rows.size() != b.rows.size()) {
        throw InputError("expected and posterior tables list different edges");
    }
}

std::string pair_label(const CandidateEdge& e) {
    return "(" + std::to_string(e.lo + 1) + ", " + std::to_string(e.hi + 1) + ")";
}

}  // namespace

double emse(const StateProbabilities& expected, const StateProbabilities& posterior) {
    check_row(expected);
    check_row(posterior);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) total += (expected[k] - posterior[k]) * (expected[k] - posterior[k]);
    return total / 3.0;
}

PosteriorTable align_expected(const PosteriorTable& expected, const PosteriorTable& posterior) {
    std::map<CandidateEdge, StateProbabilities> lookup;
    for (std::size_t e = 0; e < expected.size(); ++e) lookup[expected.edges[e]] = expected.rows[e];
    PosteriorTable out;
    out.edges = posterior.edges;
    out.rows.reserve(posterior.size());
    for (const auto& edge : posterior.edges) {
        auto it = lookup.find(edge);
        if (it == lookup.end()) {
            out.rows.push_back({0.0, 0.0, 1.0});
        } else {
            out.rows.push_back(it->second);
            lookup.erase(it);
        }
    }
    for (const auto& [edge, row] : lookup) {
        if (row[2] < 1.0) throw InputError("posterior lacks edge " + pair_label(edge));
    }
    return out;
}

double mse1(const PosteriorTable& expected, const PosteriorTable& posterior) {
    check_same_edges(expected, posterior);
    if (expected.size() == 0) return 0.0;
    double total = 0.0;
    for (std::size_t e = 0; e < expected.size(); ++e) total += emse(expected.rows[e], posterior.rows[e]);
    return total / static_cast<double>(expected.size());
}

double mse2(const PosteriorTable& expected, const PosteriorTable& posterior) {
    check_same_edges(expected, posterior);
    double total = 0.0;
    std::size_t true_edges = 0;
    for (std::size_t e = 0; e < expected.size(); ++e) {
        const auto& q = expected.rows[e];
        const auto& p = posterior.rows[e];
        check_row(q);
        check_row(p);
        if (q[2] != 0.0) continue;
        ++true_edges;
        total += (q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]);
    }
    if (true_edges == 0) return 0.0;
    return total / (2.0 * static_cast<double>(true_edges));
}

double mse3(const PosteriorTable& expected, const PosteriorTable& posterior, std::size_t b) {
    check_same_edges(expected, posterior);
    if (b < 2) throw InputError("need at least two nodes");
    double total = 0.0;
    for (std::size_t e = 0; e < expected.size(); ++e) {
        const auto& q = expected.rows[e];
        const auto& p = posterior.rows[e];
        if (expected.edges[e].hi >= b) throw InputError("edge node exceeds node count");
        check_row(q);
        check_row(p);
        total += (q[0] - p[0]) * (q[0] - p[0]) + (q[1] - p[1]) * (q[1] - p[1]);
    }
    return total / static_cast<double>(b * b - b);
}

PrecisionPower precision_power(const PosteriorTable& posterior,
                               std::span<const CandidateEdge> true_edges, double cutoff) {
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw InputError("cutoff must lie in (0, 1)");
    std::vector<CandidateEdge> truth(true_edges.begin(), true_edges.end());
    std::sort(truth.begin(), truth.end());
    std::size_t inferred = 0;
    std::size_t hits = 0;
    for (std::size_t e = 0; e < posterior.size(); ++e) {
        if (!(posterior.presence(e) > cutoff)) continue;
        ++inferred;
        hits += std::binary_search(truth.begin(), truth.end(), posterior.edges[e]);
    }
    PrecisionPower out;
    out.precision = inferred == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(inferred);
    out.power = truth.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth.size());
    return out;
}

MeanSd mean_sd(std::span<const double> values) {
    MeanSd out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

}  // namespace edgestate
