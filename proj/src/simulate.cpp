#include "edgestate/simulate.hpp"

#include <queue>
#include <string>
#include <vector>

#include "edgestate/errors.hpp"
#include "edgestate/rng.hpp"

namespace edgestate {

DataMatrix simulate(const Topology& topo, std::size_t n, double beta, std::uint64_t seed) {
    topo.validate();
    if (n < 2) throw InputError("sample size must be at least 2");
    const std::size_t b = topo.node_count;

    std::vector<std::vector<NodeId>> parents(b);
    std::vector<std::vector<NodeId>> children(b);
    std::vector<std::size_t> indegree(b, 0);
    for (const Arc& a : topo.arcs) {
        parents[a.to].push_back(a.from);
        children[a.from].push_back(a.to);
        ++indegree[a.to];
    }
    // Smallest ready node first, so the order is unique.
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < b; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::vector<NodeId> order;
    while (!ready.empty()) {
        const NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId c : children[v]) {
            if (--indegree[c] == 0) ready.push(c);
        }
    }
    if (order.size() != b) throw InputError("topology '" + topo.name + "' has a directed cycle");

    Rng rng(seed);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(b));
    for (NodeId v : order) {
        const auto col = static_cast<Eigen::Index>(v);
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double mean = 0.0;
            for (NodeId p : parents[v]) mean += x(i, static_cast<Eigen::Index>(p));
            x(i, col) = beta * mean + rng.normal();
        }
    }
    std::vector<std::string> names;
    for (NodeId v = 0; v < b; ++v) names.push_back("T" + std::to_string(v + 1));
    return DataMatrix(std::move(x), std::move(names));
}

}  // namespace edgestate
