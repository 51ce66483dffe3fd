#include <doctest.h>

#include "edgestate/errors.hpp"
#include "edgestate/graph.hpp"
#include "helpers.hpp"

using namespace edgestate;
using testing::graph_of;
using testing::states;

TEST_CASE("candidate_from_adjacency") {
    AdjacencyMatrix a(3);
    a(0, 1) = a(1, 0) = 1;
    const auto g = candidate_from_adjacency(a);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge(0) == CandidateEdge{0, 1});

    CHECK(candidate_from_adjacency(AdjacencyMatrix(4)).edge_count() == 0);

    AdjacencyMatrix gn4(4);
    for (auto [u, v] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) gn4(u, v) = gn4(v, u) = 1;
    const auto g4 = candidate_from_adjacency(gn4);
    REQUIRE(g4.edge_count() == 4);
    CHECK(g4.edges() == graph_of(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}).edges());

    AdjacencyMatrix diag(2);
    diag(1, 1) = 1;
    CHECK_THROWS_AS(candidate_from_adjacency(diag), InputError);
    AdjacencyMatrix two(2);
    two(0, 1) = 2;
    CHECK_THROWS_AS(candidate_from_adjacency(two), InputError);
}

TEST_CASE("candidate graph validation and indexing") {
    CHECK_THROWS_AS(CandidateGraph(3, {{1, 1}}), InputError);
    CHECK_THROWS_AS(CandidateGraph(3, {{2, 1}}), InputError);
    CHECK_THROWS_AS(CandidateGraph(3, {{0, 3}}), InputError);
    CHECK_THROWS_AS(CandidateGraph(3, {{0, 1}, {0, 1}}), InputError);
    const CandidateGraph a(4, {{2, 3}, {0, 1}, {1, 3}});
    const CandidateGraph b(4, {{1, 3}, {2, 3}, {0, 1}});
    CHECK(a == b);
    CHECK(a.find(3, 1) == 1);
    CHECK(a.find(0, 2) == -1);
}

TEST_CASE("fully_connected") {
    CHECK(fully_connected(2).edge_count() == 1);
    CHECK(fully_connected(4).edge_count() == 6);
    CHECK(fully_connected(11).edge_count() == 55);
    CHECK_THROWS_AS(fully_connected(0), InputError);
}

TEST_CASE("states_to_adjacency") {
    const auto g = graph_of(2, {{1, 2}});
    auto a = states_to_adjacency(g, states({0}));
    CHECK(a(0, 1) == 1);
    CHECK(a(1, 0) == 0);
    CHECK(states_to_adjacency(g, states({2})) == AdjacencyMatrix(2));
    CHECK_THROWS_AS(states_to_adjacency(g, states({0, 1})), InputError);

    const auto g4 = graph_of(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    const auto a4 = states_to_adjacency(g4, states({0, 0, 0, 1}));
    CHECK(a4(0, 1) == 1);
    CHECK(a4(0, 2) == 1);
    CHECK(a4(1, 3) == 1);
    CHECK(a4(3, 2) == 1);
    CHECK(a4(2, 3) == 0);
}

TEST_CASE("parent_sets") {
    const auto g = graph_of(3, {{1, 2}, {2, 3}});
    for (const auto& p : parent_sets(g, states({2, 2}))) CHECK(p.empty());
    const auto v = parent_sets(g, states({0, 1}));
    CHECK(v[1] == std::vector<NodeId>{0, 2});
    CHECK(v[0].empty());
    CHECK(v[2].empty());
    const auto g4 = graph_of(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    CHECK(parent_sets(g4, states({0, 0, 0, 1}))[2] == std::vector<NodeId>{0, 3});
}

TEST_CASE("round trip through adjacency keeps present edges") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t b = 2 + rng.index(7);
        const auto g = testing::random_skeleton(b, 0.5, rng);
        EdgeStateVector s(g.edge_count());
        for (auto& x : s) x = static_cast<EdgeState>(rng.index(3));
        const auto a = states_to_adjacency(g, s);
        for (NodeId j = 0; j < b; ++j) {
            for (NodeId k = 0; k < b; ++k) CHECK_FALSE((a(j, k) && a(k, j)));
        }
        std::vector<CandidateEdge> kept;
        for (EdgeId e = 0; e < s.size(); ++e) {
            if (s[e] != EdgeState::Absent) kept.push_back(g.edge(e));
        }
        CHECK(candidate_from_adjacency(a) == CandidateGraph(b, kept));
    }
}

TEST_CASE("forbid_parent removes one orientation") {
    const auto g = graph_of(3, {{1, 2}, {2, 3}});
    ConstraintSet cs(g.edge_count());
    cs.forbid_parent(g, 2, 1);  // 3 may not parent 2: edge (2,3) loses state 1
    CHECK(cs.allows(1, EdgeState::Forward));
    CHECK_FALSE(cs.allows(1, EdgeState::Reverse));
    CHECK(cs.allows(0, EdgeState::Reverse));
    cs.forbid_parent(g, 1, 2);
    CHECK(cs.allowed(1) == ConstraintSet::Allowed{false, false, true});
    CHECK_THROWS_AS(cs.restrict(1, {true, true, false}), UnsatisfiableError);
    CHECK_THROWS_AS(cs.forbid_parent(g, 0, 2), InputError);
}

TEST_CASE("acyclicity and state strings") {
    const auto tri = graph_of(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK(is_acyclic(tri, states({0, 0, 0})));
    CHECK_FALSE(is_acyclic(tri, states({0, 1, 0})));
    CHECK(state_string(states({0, 1, 2})) == "012");
    CHECK(parse_state_string("210") == states({2, 1, 0}));
    CHECK_THROWS_AS(parse_state_string("013"), InputError);
}
