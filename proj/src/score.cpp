#include "edgestate/score.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgestate/errors.hpp"

namespace edgestate {

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
    if (values_.rows() < 2) throw InputError("data needs at least two observations");
    if (names_.size() != static_cast<std::size_t>(values_.cols())) {
        throw InputError("data has " + std::to_string(values_.cols()) + " columns but " +
                         std::to_string(names_.size()) + " names");
    }
    if (!values_.allFinite()) throw InputError("data contains a non-finite value");
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
        const auto col = values_.col(j);
        const double mean = col.mean();
        if ((col.array() - mean).square().sum() <= 0.0) {
            throw InputError("column '" + names_[static_cast<std::size_t>(j)] +
                             "' has zero variance");
        }
    }
}

NodeFit node_log_likelihood(const DataMatrix& data, NodeId node, std::span<const NodeId> parents) {
    const std::size_t b = data.cols();
    const std::size_t n = data.rows();
    if (node >= b) throw InputError("node out of range");
    std::vector<NodeId> sorted(parents.begin(), parents.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("parents must be distinct");
    }
    for (NodeId p : sorted) {
        if (p >= b) throw InputError("parent out of range");
        if (p == node) throw InputError("a node cannot be its own parent");
    }
    if (parents.size() + 1 >= n) {
        throw DegenerateFitError("node " + std::to_string(node + 1) + " has " +
                                 std::to_string(parents.size()) + " parents but only " +
                                 std::to_string(n) + " observations");
    }

    const auto& x = data.values();
    const Eigen::Index cols = static_cast<Eigen::Index>(parents.size()) + 1;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(n), cols);
    design.col(0).setOnes();
    for (std::size_t i = 0; i < parents.size(); ++i) {
        design.col(static_cast<Eigen::Index>(i) + 1) = x.col(static_cast<Eigen::Index>(parents[i]));
    }
    const Eigen::VectorXd y = x.col(static_cast<Eigen::Index>(node));

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < cols) {
        throw DegenerateFitError("collinear parents for node " + std::to_string(node + 1));
    }

    NodeFit fit;
    fit.node = node;
    fit.parents.assign(parents.begin(), parents.end());
    fit.coefficients = qr.solve(y);
    const Eigen::VectorXd resid = y - design * fit.coefficients;
    fit.sigma2 = resid.squaredNorm() / static_cast<double>(n);
    if (!(fit.sigma2 >= kMinResidualVariance)) {
        throw DegenerateFitError("node " + std::to_string(node + 1) +
                                 " is predicted exactly by its parents");
    }
    fit.loglik = -0.5 * static_cast<double>(n) *
                 (std::log(2.0 * std::numbers::pi * fit.sigma2) + 1.0);
    return fit;
}

double ScoreCache::node_score(const DataMatrix& data, NodeId node,
                              const std::vector<NodeId>& parents) {
    auto key = std::make_pair(node, parents);
    std::sort(key.second.begin(), key.second.end());
    if (auto it = scores_.find(key); it != scores_.end()) {
        ++hits_;
        return it->second;
    }
    ++misses_;
    const double ll = node_log_likelihood(data, node, key.second).loglik;
    scores_.emplace(std::move(key), ll);
    return ll;
}

double graph_log_likelihood(const DataMatrix& data, const CandidateGraph& g,
                            std::span<const EdgeState> s, ScoreCache* cache) {
    if (data.cols() != g.node_count()) {
        throw InputError("data has " + std::to_string(data.cols()) + " columns but the graph has " +
                         std::to_string(g.node_count()) + " nodes");
    }
    const auto parents = parent_sets(g, s);
    double total = 0.0;
    for (NodeId v = 0; v < parents.size(); ++v) {
        total += cache ? cache->node_score(data, v, parents[v])
                       : node_log_likelihood(data, v, parents[v]).loglik;
    }
    return total;
}

}  // namespace edgestate
