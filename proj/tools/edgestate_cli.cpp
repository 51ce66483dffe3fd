// Command-line front end: simulate, infer, oracle, evaluate, bench, cycles.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edgestate/cycles.hpp"
#include "edgestate/errors.hpp"
#include "edgestate/experiment.hpp"
#include "edgestate/io.hpp"
#include "edgestate/metrics.hpp"
#include "edgestate/oracle.hpp"
#include "edgestate/sampler.hpp"
#include "edgestate/simulate.hpp"
#include "edgestate/topology.hpp"

namespace es = edgestate;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::size_t default_jobs() {
    if (const char* env = std::getenv("EDGESTATE_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

std::string check_prior(const std::string& text) {
    std::stringstream ss(text);
    double p[3];
    char sep1 = 0;
    char sep2 = 0;
    if (!(ss >> p[0] >> sep1 >> p[1] >> sep2 >> p[2]) || sep1 != ',' || sep2 != ',' ||
        !(ss >> std::ws).eof()) {
        return "prior must be three comma-separated numbers";
    }
    try {
        es::Prior(p[0], p[1], p[2]);
    } catch (const es::InputError& e) {
        return e.what();
    }
    return {};
}

es::Prior parse_prior(const std::string& text) {
    std::stringstream ss(text);
    double p0 = 0, p1 = 0, p2 = 0;
    char c = 0;
    ss >> p0 >> c >> p1 >> c >> p2;
    return es::Prior(p0, p1, p2);
}

// Writes to the named file, or stdout when the name is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw es::InputError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct TopologyFlags {
    std::string name;
    std::string dag;

    void add(CLI::App* app) {
        auto* t = app->add_option("--topology", name, "built-in topology name");
        auto* d = app->add_option("--dag", dag, "DAG file")->check(CLI::ExistingFile);
        t->excludes(d);
    }
    bool given() const { return !name.empty() || !dag.empty(); }
    es::Topology load() const {
        if (!dag.empty()) return es::read_dag_file(dag);
        return es::find_topology(name);
    }
};

struct SimulateCmd {
    TopologyFlags topo;
    std::size_t n = 0;
    double beta = 1.0;
    std::uint64_t seed = 1;
    std::string out;

    int run() const {
        const auto data = es::simulate(topo.load(), n, beta, seed);
        Output o(out);
        es::write_data_csv(o.stream(), data);
        return 0;
    }
};

struct InferCmd {
    std::string data;
    std::string graph;
    bool fully_connected = false;
    std::string prior = "0.05,0.05,0.9";
    std::size_t iterations = 30000;
    double burn_in = 0.2;
    std::size_t step_size = 120;
    std::uint64_t seed = 1;
    std::string constraints;
    std::string trace;
    std::string out;

    int run() const {
        const auto d = es::read_data_csv(data);
        const es::CandidateGraph g = fully_connected ? es::fully_connected(d.cols())
                                                     : es::read_candidate_graph(graph, d.cols());
        const es::ConstraintSet cs = constraints.empty() ? es::ConstraintSet{}
                                                         : es::read_constraints(constraints, g);
        es::McmcConfig cfg;
        cfg.iterations = iterations;
        cfg.burn_in_fraction = burn_in;
        cfg.step_size = step_size;
        cfg.seed = seed;
        const auto tr = es::run(d, g, parse_prior(prior), cfg, cs);
        if (!trace.empty()) {
            Output t(trace);
            es::write_trace_csv(t.stream(), tr);
        }
        Output o(out);
        es::write_posterior_csv(o.stream(), es::posterior_from_trace(tr, g));
        return 0;
    }
};

struct OracleCmd {
    TopologyFlags topo;
    std::string data;
    std::string graph;
    std::string prior = "0.05,0.05,0.9";
    std::string constraints;
    std::string out;

    int run() const {
        Output o(out);
        if (data.empty()) {
            const auto t = topo.load();
            es::write_posterior_csv(o.stream(),
                                    es::expected_edge_probabilities(t.true_states(), t.candidate_graph()));
            return 0;
        }
        const auto d = es::read_data_csv(data);
        const es::CandidateGraph g = !graph.empty() ? es::read_candidate_graph(graph, d.cols())
                                                    : topo.load().candidate_graph();
        const es::ConstraintSet cs = constraints.empty() ? es::ConstraintSet{}
                                                         : es::read_constraints(constraints, g);
        es::write_posterior_csv(o.stream(), es::exact_posterior(d, g, parse_prior(prior), cs));
        return 0;
    }
};

struct EvaluateCmd {
    std::string posterior;
    TopologyFlags topo;
    double cutoff = 0.5;
    std::string out;

    int run() const {
        const auto t = topo.load();
        const auto post = es::read_posterior_csv(posterior);
        for (const auto& e : post.edges) {
            if (e.hi >= t.node_count) throw es::InputError("posterior edge outside the topology's nodes");
        }
        const auto tg = t.candidate_graph();
        const auto truth = t.true_states();
        const auto expected = es::align_expected(es::expected_edge_probabilities(truth, tg), post);
        std::vector<es::CandidateEdge> true_edges;
        for (es::EdgeId e = 0; e < truth.size(); ++e) {
            if (truth[e] != es::EdgeState::Absent) true_edges.push_back(tg.edge(e));
        }
        const auto pp = es::precision_power(post, true_edges, cutoff);
        Output o(out);
        auto& os = o.stream();
        os << "mse1,mse2,mse3,precision,power\n"
           << es::format_double(es::mse1(expected, post)) << ','
           << es::format_double(es::mse2(expected, post)) << ','
           << es::format_double(es::mse3(expected, post, t.node_count)) << ','
           << es::format_double(pp.precision) << ',' << es::format_double(pp.power) << "\n\n";
        os << "edge_lo,edge_hi,emse\n";
        for (std::size_t e = 0; e < post.size(); ++e) {
            os << post.edges[e].lo + 1 << ',' << post.edges[e].hi + 1 << ','
               << es::format_double(es::emse(expected.rows[e], post.rows[e])) << "\n";
        }
        return 0;
    }
};

struct BenchCmd {
    std::string config;
    std::string out;
    std::size_t jobs = default_jobs();

    int run() const {
        const auto cfg = es::read_experiment_config(config);
        const auto report = es::run_experiment(cfg, jobs);
        Output o(out);
        es::write_report_csv(o.stream(), report);
        return 0;
    }
};

struct CyclesCmd {
    TopologyFlags topo;
    std::string graph;
    std::size_t fully_connected = 0;
    std::string out;

    int run() const {
        es::CandidateGraph g;
        if (!graph.empty()) {
            g = es::read_candidate_graph(graph);
        } else if (fully_connected != 0) {
            g = es::fully_connected(fully_connected);
        } else {
            g = topo.load().candidate_graph();
        }
        const auto catalog = es::build_cycle_catalog(g);
        Output o(out);
        auto& os = o.stream();
        if (catalog.overflowed()) {
            os << "# more than " << catalog.cap() << " skeleton cycles; catalog not built\n";
            return 0;
        }
        os << "cycle\tedges\tstates\tlength\tdecimal\n";
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            for (const auto& c : catalog.entries()[i].orientations) {
                os << i + 1 << '\t';
                for (std::size_t k = 0; k < c.length(); ++k) os << (k ? " " : "") << c.edge_indices[k] + 1;
                os << '\t' << es::state_string(c.edge_states) << '\t' << c.length() << '\t'
                   << c.decimal << "\n";
            }
        }
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-state posterior sampler for directed acyclic graphs"};
    app.require_subcommand(1);

    SimulateCmd sim;
    auto* s = app.add_subcommand("simulate", "simulate linear-Gaussian data from a DAG");
    sim.topo.add(s);
    s->add_option("--n", sim.n, "number of observations")->required()->check(CLI::Range(2, 100000000));
    s->add_option("--beta", sim.beta, "edge coefficient");
    s->add_option("--seed", sim.seed, "random seed");
    s->add_option("--out", sim.out, "output CSV (default stdout)");

    InferCmd inf;
    auto* i = app.add_subcommand("infer", "estimate edge-state posteriors by MCMC");
    i->add_option("data", inf.data, "data CSV")->required()->check(CLI::ExistingFile);
    auto* graph_opt = i->add_option("graph", inf.graph, "candidate graph (.edges or adjacency .csv)")
                          ->check(CLI::ExistingFile);
    auto* fc = i->add_flag("--fully-connected", inf.fully_connected, "use every node pair as a candidate");
    graph_opt->excludes(fc);
    i->add_option("--prior", inf.prior, "p0,p1,p2")->check(CLI::Validator(check_prior, "PRIOR"));
    i->add_option("--iterations", inf.iterations)->check(CLI::PositiveNumber);
    i->add_option("--burn-in", inf.burn_in, "fraction discarded")->check(CLI::Range(0.0, 0.999999));
    i->add_option("--step-size", inf.step_size)->check(CLI::PositiveNumber);
    i->add_option("--seed", inf.seed);
    i->add_option("--constraints", inf.constraints, "lines 'u v forbid parent'")->check(CLI::ExistingFile);
    i->add_option("--trace", inf.trace, "write retained samples to this CSV");
    i->add_option("--out", inf.out, "posterior CSV (default stdout)");

    OracleCmd orc;
    auto* o = app.add_subcommand("oracle", "expected probabilities or exact posterior");
    orc.topo.add(o);
    o->add_option("--data", orc.data, "data CSV; switches to the exact posterior")->check(CLI::ExistingFile);
    o->add_option("--graph", orc.graph, "candidate graph for the exact posterior")->check(CLI::ExistingFile);
    o->add_option("--prior", orc.prior, "p0,p1,p2")->check(CLI::Validator(check_prior, "PRIOR"));
    o->add_option("--constraints", orc.constraints)->check(CLI::ExistingFile);
    o->add_option("--out", orc.out);

    EvaluateCmd ev;
    auto* e = app.add_subcommand("evaluate", "score a posterior against a topology");
    e->add_option("--posterior", ev.posterior, "posterior CSV")->required()->check(CLI::ExistingFile);
    ev.topo.add(e);
    e->add_option("--cutoff", ev.cutoff, "edge presence threshold")->check(CLI::Range(1e-9, 1.0 - 1e-9));
    e->add_option("--out", ev.out);

    BenchCmd bench;
    auto* b = app.add_subcommand("bench", "run a simulation grid");
    b->add_option("--config", bench.config, "key = value experiment file")->required()->check(CLI::ExistingFile);
    b->add_option("--out", bench.out, "report CSV (default stdout)");
    b->add_option("--jobs", bench.jobs, "worker threads (default $EDGESTATE_JOBS or 1)")
        ->check(CLI::PositiveNumber);

    CyclesCmd cyc;
    auto* c = app.add_subcommand("cycles", "print the skeleton cycle catalog as TSV");
    cyc.topo.add(c);
    c->add_option("--graph", cyc.graph)->check(CLI::ExistingFile);
    c->add_option("--fully-connected", cyc.fully_connected, "fully connected graph on N nodes")
        ->check(CLI::PositiveNumber);
    c->add_option("--out", cyc.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : kUsageError;
    }

    auto usage = [](const std::string& msg) {
        std::cerr << "error: " << msg << "\n";
        return kUsageError;
    };
    if (s->parsed() && !sim.topo.given()) return usage("simulate needs --topology or --dag");
    if (o->parsed() && !orc.topo.given() && orc.graph.empty()) return usage("oracle needs --topology, --dag or --graph");
    if (o->parsed() && orc.data.empty() && !orc.topo.given()) return usage("expected probabilities need --topology or --dag");
    if (e->parsed() && !ev.topo.given()) return usage("evaluate needs --topology or --dag");
    if (i->parsed() && inf.graph.empty() && !inf.fully_connected) {
        return usage("infer needs a graph file or --fully-connected");
    }
    if (i->parsed()) {
        try {
            es::McmcConfig{inf.iterations, inf.burn_in, inf.step_size, inf.seed, false}.validate();
        } catch (const es::InputError& err) {
            return usage(err.what());
        }
    }

    try {
        if (s->parsed()) return sim.run();
        if (i->parsed()) return inf.run();
        if (o->parsed()) return orc.run();
        if (e->parsed()) return ev.run();
        if (b->parsed()) return bench.run();
        if (c->parsed()) return cyc.run();
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kRuntimeError;
    }
    return kUsageError;
}
