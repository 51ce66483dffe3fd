#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgestate/errors.hpp"
#include "edgestate/experiment.hpp"
#include "edgestate/io.hpp"
#include "edgestate/metrics.hpp"
#include "edgestate/oracle.hpp"
#include "edgestate/simulate.hpp"
#include "edgestate/topology.hpp"

using namespace edgestate;

namespace {

double correlation(const DataMatrix& d, Eigen::Index a, Eigen::Index b) {
    const Eigen::VectorXd x = d.values().col(a).array() - d.values().col(a).mean();
    const Eigen::VectorXd y = d.values().col(b).array() - d.values().col(b).mean();
    return x.dot(y) / std::sqrt(x.squaredNorm() * y.squaredNorm());
}

double variance(const DataMatrix& d, Eigen::Index a) {
    const Eigen::VectorXd x = d.values().col(a).array() - d.values().col(a).mean();
    return x.squaredNorm() / static_cast<double>(d.rows() - 1);
}

PosteriorTable table(std::vector<CandidateEdge> edges, std::vector<StateProbabilities> rows) {
    return PosteriorTable{std::move(edges), std::move(rows)};
}

}  // namespace

TEST_CASE("built-in topologies validate") {
    for (const auto& name : topology_names()) {
        const auto t = find_topology(name);
        CHECK_NOTHROW(t.validate());
        CHECK(is_acyclic(t.candidate_graph(), t.true_states()));
    }
    CHECK(find_topology("gn11").name == find_topology("GN11").name);
    CHECK_THROWS_AS(find_topology("nope"), InputError);
    CHECK(find_topology("GN11").node_count == 11);
    CHECK(find_topology("gn4f").false_edges.size() == 1);
}

TEST_CASE("topology files match the built-in catalog") {
    const std::filesystem::path dir = std::filesystem::path(EDGESTATE_SOURCE_DIR) / "data" / "topologies";
    for (const auto& name : topology_names()) {
        const auto path = dir / (name + ".dag");
        REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
        const auto from_file = read_dag_file(path.string());
        const auto builtin = find_topology(name);
        CHECK(from_file.node_count == builtin.node_count);
        CHECK(from_file.candidate_graph() == builtin.candidate_graph());
        CHECK(from_file.true_states() == builtin.true_states());
    }
}

TEST_CASE("dag text round trip and errors") {
    const auto t = find_topology("gn11f");
    std::stringstream ss;
    write_dag(ss, t);
    const auto back = parse_dag(ss, "x");
    CHECK(back.arcs == t.arcs);
    CHECK(back.false_edges == t.false_edges);

    std::stringstream cyclic("nodes 3\n1 2\n2 3\n3 1\n");
    CHECK_THROWS_AS(parse_dag(cyclic, "c"), InputError);
    std::stringstream clash("nodes 2\n1 2\nfalse 1 2\n");
    CHECK_THROWS_AS(parse_dag(clash, "c"), InputError);
    std::stringstream range("nodes 2\n1 3\n");
    CHECK_THROWS_AS(parse_dag(range, "c"), InputError);
}

TEST_CASE("simulation moments") {
    Topology empty{"empty", 3, {}, {}};
    const auto d0 = simulate(empty, 20000, 1.0, 5);
    CHECK(std::abs(correlation(d0, 0, 1)) < 0.03);
    CHECK(variance(d0, 2) == doctest::Approx(1.0).epsilon(0.05));

    // Collider T1 -> T2 <- T3 at beta 1: var(T2) = 3, T1 and T3 independent.
    const auto m2 = find_topology("M2");
    const auto d2 = simulate(m2, 20000, 1.0, 5);
    CHECK(variance(d2, 1) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(std::abs(correlation(d2, 0, 2)) < 0.03);

    // Chain T1 -> T2 -> T3: var = 1, 2, 3 and cov(T1, T3) = 1.
    const auto m1 = find_topology("M1");
    const auto d1 = simulate(m1, 20000, 1.0, 5);
    CHECK(correlation(d1, 0, 2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(0.03));

    const auto again = simulate(m1, 50, 1.0, 5);
    CHECK(again.values() == simulate(m1, 50, 1.0, 5).values());
    CHECK(again.values() != simulate(m1, 50, 1.0, 6).values());
    CHECK(again.names() == std::vector<std::string>{"T1", "T2", "T3"});
    CHECK_THROWS_AS(simulate(m1, 1, 1.0, 5), InputError);
}

TEST_CASE("emse") {
    CHECK(emse({1, 0, 0}, {5.0 / 6, 1.0 / 6, 0}) == doctest::Approx(1.0 / 54));
    CHECK(emse({1, 0, 0}, {0, 0, 1}) == doctest::Approx(2.0 / 3));
    CHECK(emse({0.5, 0.5, 0}, {0, 0, 1}) == doctest::Approx(0.5));
    CHECK(emse({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}) == 0.0);
    CHECK_THROWS_AS(emse({0.5, 0.6, 0}, {1, 0, 0}), InputError);
    CHECK_THROWS_AS(emse({1, 0, 0}, {-0.1, 1.1, 0}), InputError);
}

TEST_CASE("aggregate metrics") {
    const std::vector<CandidateEdge> edges{{0, 1}, {0, 2}, {1, 2}};
    const auto expected = table(edges, {{1, 0, 0}, {0, 0, 1}, {0.5, 0.5, 0}});
    const auto post = table(edges, {{0.8, 0.1, 0.1}, {0.1, 0.1, 0.8}, {0.4, 0.4, 0.2}});

    const double e0 = emse(expected.rows[0], post.rows[0]);
    const double e1 = emse(expected.rows[1], post.rows[1]);
    const double e2 = emse(expected.rows[2], post.rows[2]);
    CHECK(mse1(expected, post) == doctest::Approx((e0 + e1 + e2) / 3));

    const double sq_true = (0.04 + 0.01) + (0.01 + 0.01);
    CHECK(mse2(expected, post) == doctest::Approx(sq_true / 4));
    const double sq_all = sq_true + (0.01 + 0.01);
    CHECK(mse3(expected, post, 3) == doctest::Approx(sq_all / 6));

    // With no false candidates mse3 rescales mse2.
    const std::vector<CandidateEdge> tv{{0, 1}, {1, 2}};
    const auto ex2 = table(tv, {{1, 0, 0}, {0, 1, 0}});
    const auto po2 = table(tv, {{0.7, 0.2, 0.1}, {0.3, 0.3, 0.4}});
    CHECK(mse3(ex2, po2, 5) == doctest::Approx(mse2(ex2, po2) * 2 * 2 / 20));

    CHECK(mse1(expected, expected) == 0.0);
    CHECK(mse1(expected, post) <= 2.0 / 3);
    CHECK_THROWS_AS(mse1(expected, table(tv, {{1, 0, 0}, {0, 1, 0}})), InputError);
}

TEST_CASE("align_expected") {
    const auto m1 = find_topology("M1");
    const auto exp = expected_edge_probabilities(m1.true_states(), m1.candidate_graph());
    const std::vector<CandidateEdge> full{{0, 1}, {0, 2}, {1, 2}};
    const auto post = table(full, {{1, 0, 0}, {0, 0, 1}, {1, 0, 0}});
    const auto aligned = align_expected(exp, post);
    CHECK(aligned.edges == full);
    CHECK(aligned.rows[1] == StateProbabilities{0, 0, 1});
    CHECK(aligned.rows[2][0] == doctest::Approx(2.0 / 3));
    CHECK_THROWS_AS(align_expected(exp, table({{0, 1}}, {{1, 0, 0}})), InputError);
}

TEST_CASE("precision and power") {
    const std::vector<CandidateEdge> edges{{0, 1}, {0, 2}, {1, 2}};
    const std::vector<CandidateEdge> truth{{0, 1}, {1, 2}};
    const auto post = table(edges, {{0.6, 0.1, 0.3}, {0.3, 0.3, 0.4}, {0.1, 0.1, 0.8}});
    auto pp = precision_power(post, truth);
    CHECK(pp.precision == doctest::Approx(0.5));
    CHECK(pp.power == doctest::Approx(0.5));
    pp = precision_power(post, truth, 0.65);
    CHECK(pp.precision == doctest::Approx(1.0));
    CHECK(pp.power == doctest::Approx(0.5));
    const auto none = table(edges, {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
    pp = precision_power(none, truth);
    CHECK(pp.precision == 1.0);
    CHECK(pp.power == 0.0);
    CHECK(precision_power(none, {}).power == 1.0);
}

TEST_CASE("mean_sd") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto ms = mean_sd(v);
    CHECK(ms.mean == doctest::Approx(2.5));
    CHECK(ms.sd == doctest::Approx(std::sqrt(5.0 / 3)));
    const std::vector<double> one{7};
    CHECK(mean_sd(one).sd == 0.0);
}

TEST_CASE("experiment config parsing") {
    std::stringstream ss(
        "# grid\n"
        "topology = M1, GN4\n"
        "n = 100,600\n"
        "beta = 1\n"
        "replicates = 3\n"
        "prior = 0.1, 0.1, 0.8\n"
        "iterations = 2000\n"
        "burn_in = 0.25\n"
        "step_size = 10\n"
        "seed = 9\n"
        "fully_connected = true\n");
    const auto c = parse_experiment_config(ss);
    CHECK(c.topologies == std::vector<std::string>{"M1", "GN4"});
    CHECK(c.sample_sizes == std::vector<std::size_t>{100, 600});
    CHECK(c.betas == std::vector<double>{1.0});
    CHECK(c.replicates == 3);
    CHECK(c.prior == Prior(0.1, 0.1, 0.8));
    CHECK(c.iterations == 2000);
    CHECK(c.burn_in_fraction == 0.25);
    CHECK(c.step_size == 10);
    CHECK(c.master_seed == 9);
    CHECK(c.fully_connected);

    for (const char* bad : {"topology = M1\nn = 100\n", "topology = M1\nn = 100\nbeta = 1\ncolour = red\n",
                            "topology = M1\nn = x\nbeta = 1\n", "topology = M1\nn = 100\nbeta = 1\nprior = 0.5,0.5\n",
                            "topology = M1\nn = 100\nbeta = 1\nstep_size = 0\n", "just words\n"}) {
        std::stringstream in(bad);
        CHECK_THROWS_AS(parse_experiment_config(in), InputError);
    }
}

TEST_CASE("replicate seeds") {
    CHECK(replicate_seed(1, 0, 0) == derive_seed(derive_seed(1, 0), 0));
    CHECK(replicate_seed(1, 2, 3) != replicate_seed(1, 3, 2));
    CHECK(replicate_seed(1, 0, 1) != replicate_seed(2, 0, 1));
}

TEST_CASE("run_experiment shape and thread invariance") {
    ExperimentConfig c;
    c.topologies = {"M1", "gn4f"};
    c.sample_sizes = {80};
    c.betas = {1.0, 0.5};
    c.replicates = 3;
    c.iterations = 600;
    c.step_size = 4;
    const auto one = run_experiment(c, 1);
    const auto four = run_experiment(c, 4);
    REQUIRE(one.cells.size() == 4);
    CHECK(one.cells[0].topology == "M1");
    CHECK(one.cells[1].beta == 0.5);
    CHECK(one.cells[2].topology == "gn4f");
    for (std::size_t i = 0; i < one.cells.size(); ++i) {
        REQUIRE(one.cells[i].replicates.size() == 3);
        for (std::size_t r = 0; r < 3; ++r) {
            CHECK(one.cells[i].replicates[r].posterior.rows == four.cells[i].replicates[r].posterior.rows);
            CHECK(one.cells[i].replicates[r].mse1 == four.cells[i].replicates[r].mse1);
        }
        CHECK(one.cells[i].mse1.mean == four.cells[i].mse1.mean);
    }
    CHECK(one.cells[0].false_emse.mean == 0.0);
    const auto& rep = one.cells[2].replicates[0];
    CHECK(std::count(rep.false_edge.begin(), rep.false_edge.end(), true) == 1);

    std::stringstream a, b;
    write_report_csv(a, one);
    write_report_csv(b, four);
    CHECK(a.str() == b.str());
    std::string header;
    std::getline(a, header);
    CHECK(header.rfind("topology,n,beta,replicates,mse1_mean,mse1_sd", 0) == 0);
}
