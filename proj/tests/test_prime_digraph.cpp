#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bipmap/prime_digraph.hpp"

using namespace bipmap;

TEST_CASE("pi_graph") {
    auto g105 = pi_graph(105);
    REQUIRE(g105.vertices == std::vector<i64>{3, 5, 7});
    REQUIRE(g105.arcs == std::vector<PrimeArc>{{3, 7, 1}});

    auto g90 = pi_graph(90);
    REQUIRE(g90.vertices == std::vector<i64>{2, 3, 5});
    REQUIRE(g90.arcs == std::vector<PrimeArc>{{2, 3, 1}, {2, 5, 2}});

    auto g13 = pi_graph(13);
    REQUIRE(g13.vertices == std::vector<i64>{13});
    REQUIRE(g13.arcs.empty());

    REQUIRE_THROWS_AS(pi_graph(1), ContractError);

    SECTION("arcs always increase the prime, so Pi_n is acyclic") {
        for (i64 n : {30, 42, 90, 105, 120, 210, 330, 2310}) {
            for (const auto& a : pi_graph(n).arcs) REQUIRE(a.q < a.p);
            REQUIRE(is_acyclic(as_abstract(pi_graph(n))));
        }
    }
}

TEST_CASE("short spanning subgraphs") {
    SECTION("single-tail graphs have all 2^arcs subsets") {
        REQUIRE(short_spanning_subgraphs(pi_graph(90)).size() == 4);
        REQUIRE(short_spanning_subgraphs(pi_graph(105)).size() == 2);
        REQUIRE(short_spanning_subgraphs(pi_graph(7)).size() == 1);
    }
    SECTION("head/tail exclusion drops chained subsets") {
        // Pi_110 has arcs 2->5, 2->11, 5->11; any subset with both 2->5 and
        // 5->11 fails
        auto subs = short_spanning_subgraphs(pi_graph(110));
        REQUIRE(subs.size() == 6);
        for (const auto& s : subs) REQUIRE(is_short_arc_set(s.arcs));
    }
    SECTION("null subgraph comes first and terminals complement non-terminals") {
        auto subs = short_spanning_subgraphs(pi_graph(90));
        REQUIRE(subs.front().arcs.empty());
        for (const auto& s : subs) {
            auto t = s.terminals();
            auto nt = s.non_terminals();
            REQUIRE(t.size() + nt.size() == s.parent.vertices.size());
        }
    }
}

TEST_CASE("realize_digraph") {
    SECTION("single vertex") {
        REQUIRE(realize_digraph({{5}, {}}, RealizeStrategy::MinimalSearch).n == 3);
    }
    SECTION("one arc labelled 1: minimal 21, proof-following 39") {
        AbstractDigraph d{{0, 1}, {{0, 1, 1}}};
        REQUIRE(realize_digraph(d, RealizeStrategy::MinimalSearch).n == 21);
        REQUIRE(realize_digraph(d, RealizeStrategy::ProofFollowing).n == 39);
    }
    SECTION("cyclic inputs are not realizable") {
        AbstractDigraph d{{0, 1}, {{0, 1, 1}, {1, 0, 1}}};
        REQUIRE_THROWS_AS(realize_digraph(d), NotRealizableError);
    }
    SECTION("round trips as labelled digraphs, both strategies") {
        std::vector<AbstractDigraph> suite{
            {{0}, {}},
            {{0, 1}, {}},
            {{0, 1}, {{0, 1, 1}}},
            {{0, 1}, {{0, 1, 2}}},
            {{0, 1, 2}, {{0, 1, 1}, {0, 2, 1}}},
            {{0, 1, 2}, {{0, 1, 1}, {1, 2, 1}}},
            {{0, 1, 2, 3}, {{0, 1, 1}, {2, 3, 2}}},
        };
        for (const auto& d : suite) {
            for (auto strat : {RealizeStrategy::MinimalSearch, RealizeStrategy::ProofFollowing}) {
                auto r = realize_digraph(d, strat);
                REQUIRE(r.n % 2 == 1);
                REQUIRE(labelled_digraphs_isomorphic(d, as_abstract(pi_graph(r.n))));
                // the explicit assignment is itself the isomorphism
                for (const auto& [v, p] : r.assignment) REQUIRE(is_prime(p));
            }
        }
    }
    SECTION("input validation") {
        REQUIRE_THROWS_AS(realize_digraph({{0, 0}, {}}), ContractError);
        REQUIRE_THROWS_AS(realize_digraph({{0, 1}, {{0, 2, 1}}}), ContractError);
        REQUIRE_THROWS_AS(realize_digraph({{0, 1}, {{0, 1, 0}}}), ContractError);
    }
}

TEST_CASE("realize_underlying_graph") {
    REQUIRE(realize_underlying_graph({0, 1}, {}).n == 15);
    REQUIRE(realize_underlying_graph({0, 1}, {{0, 1}}).n == 21);
    SECTION("triangle round-trips through pi_graph") {
        auto r = realize_underlying_graph({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
        AbstractDigraph oriented{{0, 1, 2}, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}};
        REQUIRE(labelled_digraphs_isomorphic(oriented, as_abstract(pi_graph(r.n))));
    }
}

TEST_CASE("even-shape check and even minimal search") {
    AbstractDigraph with_tail{{0, 1, 2}, {{0, 1, 1}, {0, 2, 1}}};
    REQUIRE(has_universal_tail(with_tail));
    AbstractDigraph without{{0, 1, 2}, {{0, 1, 1}}};
    REQUIRE_FALSE(has_universal_tail(without));

    RealizeOptions opt;
    opt.allow_even = true;
    auto r = realize_digraph(with_tail, RealizeStrategy::MinimalSearch, opt);
    REQUIRE(r.n % 2 == 0);  // 2 qualifies as the universal tail and is minimal
    REQUIRE(labelled_digraphs_isomorphic(with_tail, as_abstract(pi_graph(r.n))));
}

TEST_CASE("extension_witness") {
    REQUIRE(extension_witness({3}, {5}) == 19);
    REQUIRE(extension_witness({}, {}) == 3);
    REQUIRE(extension_witness({3, 7}, {5}) == 379);
    REQUIRE_THROWS_AS(extension_witness({3}, {3}), ContractError);
    REQUIRE_THROWS_AS(extension_witness({2}, {}), ContractError);

    SECTION("random pairs verify all three divisibility clauses") {
        const std::vector<i64> odd_primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<i64> pool = odd_primes;
            std::shuffle(pool.begin(), pool.end(), rng);
            std::vector<i64> u(pool.begin(), pool.begin() + 2);
            std::vector<i64> v(pool.begin() + 2, pool.begin() + 4);
            i64 p = extension_witness(u, v, 2000000);
            REQUIRE(is_prime(p));
            for (i64 x : u) REQUIRE((p - 1) % x == 0);
            for (i64 x : v) {
                REQUIRE((p - 1) % x != 0);
                REQUIRE((x - 1) % p != 0);
            }
        }
    }
}

TEST_CASE("dot emission") {
    REQUIRE(to_dot(pi_graph(90), "pi90") ==
            "digraph pi90 {\n  \"2\";\n  \"3\";\n  \"5\";\n"
            "  \"2\" -> \"3\" [label=\"1\"];\n  \"2\" -> \"5\" [label=\"2\"];\n}\n");
}
