#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "edgestate/graph.hpp"

namespace edgestate {

// N observations (rows) by b nodes (columns).
class DataMatrix {
public:
    DataMatrix() = default;
    // Throws InputError when N < 2, names and columns disagree, a value is
    // not finite, or a column has zero sample variance.
    DataMatrix(Eigen::MatrixXd values, std::vector<std::string> names);

    std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<std::string>& names() const { return names_; }

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> names_;
};

struct NodeFit {
    NodeId node = 0;
    std::vector<NodeId> parents;
    Eigen::VectorXd coefficients;  // intercept first, then one per parent
    double sigma2 = 0.0;
    double loglik = 0.0;
};

inline constexpr double kMinResidualVariance = 1e-12;

// OLS of `node` on an intercept plus `parents`, sigma2 = RSS / N.
// Throws InputError on bad parents, DegenerateFitError on a rank-deficient
// design or sigma2 below kMinResidualVariance.
NodeFit node_log_likelihood(const DataMatrix& data, NodeId node, std::span<const NodeId> parents);

// Node log-likelihoods keyed by (node, sorted parents).
class ScoreCache {
public:
    double node_score(const DataMatrix& data, NodeId node, const std::vector<NodeId>& parents);

    std::size_t size() const { return scores_.size(); }
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }
    void clear() { scores_.clear(); }

private:
    std::map<std::pair<NodeId, std::vector<NodeId>>, double> scores_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

// Sum of node log-likelihoods in node order. With cache == nullptr every
// node is refit.
double graph_log_likelihood(const DataMatrix& data, const CandidateGraph& g,
                            std::span<const EdgeState> s, ScoreCache* cache = nullptr);

}  // namespace edgestate
