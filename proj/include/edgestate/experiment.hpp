#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgestate/metrics.hpp"
#include "edgestate/prior.hpp"
#include "edgestate/sampler.hpp"
#include "edgestate/topology.hpp"

namespace edgestate {

struct ExperimentConfig {
    std::vector<std::string> topologies;
    std::vector<std::size_t> sample_sizes;
    std::vector<double> betas;
    std::size_t replicates = 25;
    Prior prior = Prior::sparse_default();
    std::size_t iterations = 30000;
    double burn_in_fraction = 0.2;
    std::size_t step_size = 120;
    std::uint64_t master_seed = 1;
    bool fully_connected = false;  // candidate graph: true skeleton (plus false edges) or all pairs
    double cutoff = 0.5;
};

// key = value lines with '#' comments. Keys: topology, n, beta (comma
// lists), replicates, prior (p0,p1,p2), iterations, burn_in, step_size,
// seed, fully_connected (true/false), cutoff.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig read_experiment_config(const std::string& path);

struct ReplicateResult {
    double mse1 = 0.0;
    double mse2 = 0.0;
    double mse3 = 0.0;
    double precision = 0.0;
    double power = 0.0;
    std::vector<double> edge_emse;  // per candidate edge
    std::vector<bool> false_edge;   // per candidate edge
    PosteriorTable posterior;
};

struct CellReport {
    std::string topology;
    std::size_t n = 0;
    double beta = 0.0;
    std::vector<ReplicateResult> replicates;
    MeanSd mse1, mse2, mse3, precision, power;
    MeanSd false_emse;  // replicate means over false edges; zero when there are none
};

struct EvalReport {
    std::vector<CellReport> cells;  // topology-major, then N, then beta
};

// Seeds for replicate r of grid cell c: stream derive_seed(derive_seed(master, c), r);
// the data use derive_seed(stream, 0) and the chain derive_seed(stream, 1).
std::uint64_t replicate_seed(std::uint64_t master, std::size_t cell, std::size_t replicate);

// Simulates, infers and scores one replicate.
ReplicateResult run_replicate(const Topology& topo, std::size_t n, double beta,
                              const ExperimentConfig& config, std::uint64_t seed);

// Runs the grid on up to `jobs` threads; results do not depend on `jobs`.
EvalReport run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

// One row per cell with mean and sd columns for each metric.
void write_report_csv(std::ostream& out, const EvalReport& report);

}  // namespace edgestate
