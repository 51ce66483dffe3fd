#include "edgestate/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "edgestate/errors.hpp"
#include "edgestate/io.hpp"
#include "edgestate/oracle.hpp"
#include "edgestate/simulate.hpp"

namespace edgestate {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size()) throw InputError("config key '" + key + "': bad number '" + v + "'");
    return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        if (!v.empty() && v[0] == '-') throw InputError("");
        x = std::stoull(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) {
        throw InputError("config key '" + key + "': bad non-negative integer '" + v + "'");
    }
    return x;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "topology") {
            cfg.topologies = split_list(value);
        } else if (key == "n") {
            cfg.sample_sizes.clear();
            for (const auto& v : split_list(value)) cfg.sample_sizes.push_back(to_unsigned(key, v));
        } else if (key == "beta") {
            cfg.betas.clear();
            for (const auto& v : split_list(value)) cfg.betas.push_back(to_double(key, v));
        } else if (key == "replicates") {
            cfg.replicates = to_unsigned(key, value);
        } else if (key == "prior") {
            const auto p = split_list(value);
            if (p.size() != 3) throw InputError("config key 'prior' needs three values");
            cfg.prior = Prior(to_double(key, p[0]), to_double(key, p[1]), to_double(key, p[2]));
        } else if (key == "iterations") {
            cfg.iterations = to_unsigned(key, value);
        } else if (key == "burn_in") {
            cfg.burn_in_fraction = to_double(key, value);
        } else if (key == "step_size") {
            cfg.step_size = to_unsigned(key, value);
        } else if (key == "seed") {
            cfg.master_seed = to_unsigned(key, value);
        } else if (key == "fully_connected") {
            if (value != "true" && value != "false") {
                throw InputError("config key 'fully_connected' must be true or false");
            }
            cfg.fully_connected = value == "true";
        } else if (key == "cutoff") {
            cfg.cutoff = to_double(key, value);
        } else {
            throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.topologies.empty()) throw InputError("config lists no topology");
    if (cfg.sample_sizes.empty()) throw InputError("config lists no sample size");
    if (cfg.betas.empty()) throw InputError("config lists no beta");
    if (cfg.replicates == 0) throw InputError("config needs at least one replicate");
    for (const auto& t : cfg.topologies) find_topology(t);
    McmcConfig{cfg.iterations, cfg.burn_in_fraction, cfg.step_size, 0, false}.validate();
    return cfg;
}

ExperimentConfig read_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_experiment_config(in);
}

std::uint64_t replicate_seed(std::uint64_t master, std::size_t cell, std::size_t replicate) {
    return derive_seed(derive_seed(master, cell), replicate);
}

ReplicateResult run_replicate(const Topology& topo, std::size_t n, double beta,
                              const ExperimentConfig& config, std::uint64_t seed) {
    const DataMatrix data = simulate(topo, n, beta, derive_seed(seed, 0));
    const CandidateGraph topo_graph = topo.candidate_graph();
    const CandidateGraph g = config.fully_connected ? fully_connected(topo.node_count) : topo_graph;

    McmcConfig mc;
    mc.iterations = config.iterations;
    mc.burn_in_fraction = config.burn_in_fraction;
    mc.step_size = config.step_size;
    mc.seed = derive_seed(seed, 1);
    const Trace trace = run(data, g, config.prior, mc);

    ReplicateResult r;
    r.posterior = posterior_from_trace(trace, g);
    const auto truth = topo.true_states();
    const PosteriorTable expected =
        align_expected(expected_edge_probabilities(truth, topo_graph), r.posterior);
    r.mse1 = mse1(expected, r.posterior);
    r.mse2 = mse2(expected, r.posterior);
    r.mse3 = mse3(expected, r.posterior, topo.node_count);

    std::vector<CandidateEdge> true_edges;
    for (EdgeId e = 0; e < truth.size(); ++e) {
        if (truth[e] != EdgeState::Absent) true_edges.push_back(topo_graph.edge(e));
    }
    const auto pp = precision_power(r.posterior, true_edges, config.cutoff);
    r.precision = pp.precision;
    r.power = pp.power;

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        r.edge_emse.push_back(emse(expected.rows[e], r.posterior.rows[e]));
        const CandidateEdge& edge = g.edge(e);
        r.false_edge.push_back(std::find(topo.false_edges.begin(), topo.false_edges.end(), edge) !=
                               topo.false_edges.end());
    }
    return r;
}

EvalReport run_experiment(const ExperimentConfig& config, std::size_t jobs) {
    struct Task {
        std::size_t cell;
        std::size_t replicate;
    };
    EvalReport report;
    std::vector<Topology> topologies;
    for (const auto& name : config.topologies) topologies.push_back(find_topology(name));
    std::vector<std::size_t> cell_topology;
    for (std::size_t t = 0; t < topologies.size(); ++t) {
        for (std::size_t n : config.sample_sizes) {
            for (double beta : config.betas) {
                CellReport cell;
                cell.topology = topologies[t].name;
                cell.n = n;
                cell.beta = beta;
                cell.replicates.resize(config.replicates);
                report.cells.push_back(std::move(cell));
                cell_topology.push_back(t);
            }
        }
    }
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        for (std::size_t r = 0; r < config.replicates; ++r) tasks.push_back({c, r});
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& task = tasks[i];
            CellReport& cell = report.cells[task.cell];
            try {
                cell.replicates[task.replicate] =
                    run_replicate(topologies[cell_topology[task.cell]], cell.n, cell.beta, config,
                                  replicate_seed(config.master_seed, task.cell, task.replicate));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = tasks.size();
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& cell : report.cells) {
        std::vector<double> m1, m2, m3, prec, pow, fe;
        for (const auto& r : cell.replicates) {
            m1.push_back(r.mse1);
            m2.push_back(r.mse2);
            m3.push_back(r.mse3);
            prec.push_back(r.precision);
            pow.push_back(r.power);
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t e = 0; e < r.edge_emse.size(); ++e) {
                if (r.false_edge[e]) {
                    sum += r.edge_emse[e];
                    ++count;
                }
            }
            fe.push_back(count ? sum / static_cast<double>(count) : 0.0);
        }
        cell.mse1 = mean_sd(m1);
        cell.mse2 = mean_sd(m2);
        cell.mse3 = mean_sd(m3);
        cell.precision = mean_sd(prec);
        cell.power = mean_sd(pow);
        cell.false_emse = mean_sd(fe);
    }
    return report;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
    out << "topology,n,beta,replicates,mse1_mean,mse1_sd,mse2_mean,mse2_sd,mse3_mean,mse3_sd,"
           "precision_mean,precision_sd,power_mean,power_sd,false_emse_mean,false_emse_sd\n";
    for (const auto& c : report.cells) {
        out << c.topology << ',' << c.n << ',' << format_double(c.beta) << ',' << c.replicates.size();
        for (const MeanSd* m : {&c.mse1, &c.mse2, &c.mse3, &c.precision, &c.power, &c.false_emse}) {
            out << ',' << format_double(m->mean) << ',' << format_double(m->sd);
        }
        out << "\n";
    }
}

}  // namespace edgestate
