#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "edgestate/errors.hpp"
#include "edgestate/oracle.hpp"
#include "edgestate/simulate.hpp"
#include "edgestate/topology.hpp"
#include "helpers.hpp"
#include "oracles/brute_posterior.hpp"

using namespace edgestate;
using testing::graph_of;
using testing::states;

namespace {

std::vector<std::vector<double>> columns_of(const DataMatrix& d) {
    std::vector<std::vector<double>> cols(d.cols());
    for (std::size_t j = 0; j < d.cols(); ++j) {
        for (std::size_t i = 0; i < d.rows(); ++i) {
            cols[j].push_back(d.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    }
    return cols;
}

// Two triangles sharing edge (2,3): (1,2),(1,3),(2,3),(2,4),(3,4).
CandidateGraph example_graph() { return graph_of(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}); }

}  // namespace

TEST_CASE("acyclic orientation counts") {
    CHECK(enumerate_acyclic_orientations(graph_of(2, {{1, 2}})).size() == 2);
    CHECK(enumerate_acyclic_orientations(graph_of(3, {{1, 2}, {1, 3}, {2, 3}})).size() == 6);
    CHECK(enumerate_acyclic_orientations(find_topology("GN4").candidate_graph()).size() == 14);
    // Acyclic orientations of K_n are its n! orderings.
    CHECK(enumerate_acyclic_orientations(fully_connected(5)).size() == 120);
    CHECK_THROWS_AS(enumerate_acyclic_orientations(fully_connected(7)), GuardExceededError);
}

TEST_CASE("equivalence class sizes") {
    auto size_of = [](const char* name) {
        const auto t = find_topology(name);
        return equivalence_class(t.true_states(), t.candidate_graph()).size();
    };
    CHECK(size_of("M1") == 3);
    CHECK(size_of("M2") == 1);
    CHECK(size_of("GN4") == 3);
    CHECK(size_of("GN11") == 25);
    CHECK(size_of("multiparent") == 1);
    CHECK(size_of("gn4f") == 3);

    const auto tri = graph_of(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK_THROWS_AS(equivalence_class(states({0, 1, 0}), tri), InputError);
}

TEST_CASE("v structures") {
    const auto g = graph_of(3, {{1, 2}, {2, 3}});
    CHECK(v_structures(g, states({0, 1})) == std::vector<VStructure>{{0, 1, 2}});
    CHECK(v_structures(g, states({0, 0})).empty());
    const auto tri = graph_of(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK(v_structures(tri, states({0, 2, 1})) == std::vector<VStructure>{{0, 1, 2}});
    CHECK(v_structures(tri, states({0, 0, 1})).empty());
}

TEST_CASE("class matches likelihood ties on generic data") {
    // Members tie; every other acyclic orientation of the skeleton scores differently.
    for (const auto& name : {"M1", "M2", "GN4", "GN5", "multiparent", "GN8"}) {
        const auto t = find_topology(name);
        const auto g = t.candidate_graph();
        const auto d = simulate(t, 300, 0.9, 31);
        const double ref = graph_log_likelihood(d, g, t.true_states());
        auto members = equivalence_class(t.true_states(), g);
        std::sort(members.begin(), members.end());
        std::vector<EdgeStateVector> tied;
        for (const auto& s : enumerate_acyclic_orientations(g)) {
            if (std::abs(graph_log_likelihood(d, g, s) - ref) <= 1e-8 * std::abs(ref)) tied.push_back(s);
        }
        std::sort(tied.begin(), tied.end());
        CHECK(tied == members);
    }
}

TEST_CASE("expected probabilities for the simple graphs") {
    const auto m1 = find_topology("M1");
    const auto e1 = expected_edge_probabilities(m1.true_states(), m1.candidate_graph());
    CHECK(e1.rows[0][0] == doctest::Approx(1.0 / 3));
    CHECK(e1.rows[1][0] == doctest::Approx(2.0 / 3));
    const auto m2 = find_topology("M2");
    const auto e2 = expected_edge_probabilities(m2.true_states(), m2.candidate_graph());
    CHECK(e2.rows[0] == StateProbabilities{1, 0, 0});
    CHECK(e2.rows[1] == StateProbabilities{0, 1, 0});
    const auto f = find_topology("gn4f");
    const auto ef = expected_edge_probabilities(f.true_states(), f.candidate_graph());
    CHECK(ef.rows[2] == StateProbabilities{0, 0, 1});
}

TEST_CASE("exact posterior agrees with brute-force enumeration") {
    for (const auto& name : {"M1", "M2", "GN4", "m1f"}) {
        const auto t = find_topology(name);
        const auto g = t.candidate_graph();
        const auto d = simulate(t, 60, 0.5, 13);
        const auto got = exact_posterior(d, g, Prior::sparse_default());
        std::vector<oracle::Pair> edges;
        for (const auto& e : g.edges()) edges.push_back({e.lo, e.hi});
        const auto want = oracle::brute_posterior(columns_of(d), edges, {0.05, 0.05, 0.9});
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            for (int k = 0; k < 3; ++k) CHECK(got.rows[e][k] == doctest::Approx(want[e][k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact posterior edge cases") {
    const auto g = graph_of(2, {{1, 2}});
    Topology noise{"noise", 2, {}, {}};
    const auto d = simulate(noise, 50, 0.0, 3);
    const auto post = exact_posterior(d, g, Prior::uniform());
    CHECK(post.rows[0][0] == doctest::Approx(post.rows[0][1]).epsilon(1e-12));

    const auto gn4 = find_topology("GN4");
    const auto d4 = simulate(gn4, 100, 1.0, 3);
    const auto none = exact_posterior(d4, gn4.candidate_graph(), Prior(0, 0, 1));
    for (const auto& row : none.rows) CHECK(row == StateProbabilities{0, 0, 1});

    const auto m1 = find_topology("M1");
    const auto d1 = simulate(m1, 600, 1.0, 6);
    const auto p1 = exact_posterior(d1, m1.candidate_graph(), Prior::sparse_default());
    CHECK(p1.rows[0][0] == doctest::Approx(1.0 / 3).epsilon(0.02));
    CHECK(p1.rows[1][0] == doctest::Approx(2.0 / 3).epsilon(0.02));

    CHECK_THROWS_AS(exact_posterior(simulate(find_topology("GN11"), 50, 1.0, 1), fully_connected(11),
                                    Prior::sparse_default()),
                    GuardExceededError);
}

TEST_CASE("repair path coefficients on two triangles") {
    const auto g = example_graph();
    const auto cat = build_cycle_catalog(g);
    const Prior prior = Prior::sparse_default();

    const auto ex1 = enumerate_repair_paths(states({0, 0, 0, 1, 1}), states({0, 1, 2, 1, 1}), cat, prior);
    CHECK(ex1.paths.size() == 2);
    CHECK(ex1.coefficient_sum() == Rational(1, 15) + Rational(1, 25));
    CHECK(ex1.change_probability == doctest::Approx((0.05 / 0.95) * (0.9 / 0.95)));

    const auto ex2 = enumerate_repair_paths(states({0, 0, 0, 1, 1}), states({2, 1, 1, 1, 0}), cat, prior);
    CHECK(ex2.paths.size() == 3);
    CHECK(ex2.coefficient_sum() == Rational(1, 25 * 9) + Rational(1, 125 * 3) + Rational(1, 625));

    const auto same = enumerate_repair_paths(states({0, 0, 0, 1, 1}), states({0, 0, 0, 1, 1}), cat, prior);
    REQUIRE(same.paths.size() == 1);
    CHECK(same.paths[0].coefficient == 1);
    CHECK(same.paths[0].divisors.empty());

    CHECK_THROWS_AS(enumerate_repair_paths(EdgeStateVector(10, EdgeState::Absent),
                                           EdgeStateVector(10, EdgeState::Absent),
                                           build_cycle_catalog(fully_connected(5)), prior),
                    GuardExceededError);
}
