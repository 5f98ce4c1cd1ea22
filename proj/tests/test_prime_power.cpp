#include <catch2/catch_amalgamated.hpp>

#include "bipmap/prime_power.hpp"
#include "test_support.hpp"

using namespace bipmap;
using namespace bipmap::testing;

TEST_CASE("label catalogue counts match the classification") {
    // odd p: p^{e-1} labels
    REQUIRE(enumerate_prime_power_labels(3, 1).size() == 1);
    REQUIRE(enumerate_prime_power_labels(3, 2).size() == 3);
    REQUIRE(enumerate_prime_power_labels(3, 3).size() == 9);
    REQUIRE(enumerate_prime_power_labels(5, 2).size() == 5);
    REQUIRE(enumerate_prime_power_labels(7, 1).size() == 1);
    // p = 2: 1, 2, 2^{e-2} + 4
    REQUIRE(enumerate_prime_power_labels(2, 1).size() == 1);
    REQUIRE(enumerate_prime_power_labels(2, 2).size() == 2);
    REQUIRE(enumerate_prime_power_labels(2, 3).size() == 6);
    REQUIRE(enumerate_prime_power_labels(2, 4).size() == 8);
    REQUIRE(enumerate_prime_power_labels(2, 5).size() == 12);
}

TEST_CASE("catalogue contents for the spec'd cases") {
    auto l32 = enumerate_prime_power_labels(3, 2);
    REQUIRE(render_label(l32[0]) == "3^2:M(1,1)");
    REQUIRE(render_label(l32[1]) == "3^2:M(1,2)");
    REQUIRE(render_label(l32[2]) == "3^2:std");

    auto l22 = enumerate_prime_power_labels(2, 2);
    REQUIRE(render_label(l22[0]) == "2^2:std");
    REQUIRE(render_label(l22[1]) == "2^2:N(0,0)");

    auto l23 = enumerate_prime_power_labels(2, 3);
    std::vector<std::string> got;
    for (const auto& l : l23) got.push_back(render_label(l));
    REQUIRE(got == std::vector<std::string>{"2^3:M(2,1)", "2^3:std", "2^3:N(0,0)", "2^3:N(0,1)",
                                            "2^3:N(1,0)", "2^3:N(1,1)"});
}

TEST_CASE("label invariants are enforced") {
    REQUIRE_THROWS_AS(validate_label(metacyclic_label(2, 2, 1, 1)), ContractError);  // f=1, e>=2
    REQUIRE_THROWS_AS(validate_label(metacyclic_label(3, 2, 1, 3)), ContractError);  // u not unit
    REQUIRE_THROWS_AS(validate_label(metacyclic_label(3, 2, 3, 1)), ContractError);  // f > e
    REQUIRE_THROWS_AS(validate_label(non_metacyclic_label(2, 1, 0)), ContractError);  // e=2 forces 0,0
    PrimePowerLabel odd_nm{3, 2, PrimePowerLabel::Kind::NonMetacyclic, 1, 1, 0, 0};
    REQUIRE_THROWS_AS(validate_label(odd_nm), ContractError);
}

TEST_CASE("f invariant") {
    REQUIRE(f_invariant(metacyclic_label(3, 2, 2, 1)) == 2);
    REQUIRE(f_invariant(non_metacyclic_label(3, 1, 0)) == 1);
    REQUIRE(f_invariant(metacyclic_label(2, 3, 3, 1)) == 3);
}

TEST_CASE("build_prime_power_triple: metacyclic") {
    SECTION("M(9,2,1) is the abelian standard triple") {
        auto t = build_prime_power_triple(metacyclic_label(3, 2, 2, 1));
        REQUIRE(t.group->size() == 81);
        REQUIRE(triples_isomorphic(t, standard_triple(9)));
    }
    SECTION("M(8,2,1) has order 64 and satisfies h^g = h^5") {
        auto t = build_prime_power_triple(metacyclic_label(2, 3, 2, 1));
        const FiniteGroup& g = *t.group;
        REQUIRE(g.size() == 64);
        const int ge = g.index_of(ElemEncoding::of({1, 0}));
        const int he = g.index_of(ElemEncoding::of({0, 1}));
        REQUIRE(g.mul(g.mul(g.inv(ge), he), ge) == g.pow(he, 5));
    }
}

TEST_CASE("build_prime_power_triple: non-metacyclic") {
    SECTION("N(4;0,0) is the order-16 torus triple with |xy| = 2") {
        auto t = build_prime_power_triple(non_metacyclic_label(2, 0, 0));
        REQUIRE(t.group->size() == 16);
        REQUIRE(element_order(*t.group, t.group->mul(t.x, t.y)) == 2);
    }
    SECTION("(xy)^2 = z^{k+l} across all parameters and exponents") {
        for (int e = 3; e <= 5; ++e) {
            for (int k = 0; k <= 1; ++k) {
                for (int l = 0; l <= 1; ++l) {
                    auto t = build_prime_power_triple(non_metacyclic_label(e, k, l));
                    const i64 expected = (k == l) ? 2 : 4;
                    REQUIRE(element_order(*t.group, t.group->mul(t.x, t.y)) == expected);
                }
            }
        }
    }
}

TEST_CASE("catalogue labels give pairwise non-isomorphic triples") {
    // every (p, e) with p^{2e} <= 4096
    for (auto [p, e] : std::vector<std::pair<i64, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5},
                                                        {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2},
                                                        {7, 1}, {11, 1}, {13, 1}}) {
        auto labs = enumerate_prime_power_labels(p, e);
        std::vector<IsobicyclicTriple> ts;
        for (const auto& l : labs) ts.push_back(build_prime_power_triple(l));
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                if (triples_isomorphic(ts[i], ts[j]))
                    FAIL("isomorphic pair " << render_label(labs[i]) << " ~ "
                                            << render_label(labs[j]));
    }
}

TEST_CASE("admissible eigenvalues") {
    const auto std3 = metacyclic_label(3, 1, 1, 1);
    auto v = admissible_eigenvalues(std3, 7, 1);
    REQUIRE(v == std::vector<Residue>{Residue(1, 7), Residue(2, 7), Residue(4, 7)});

    const auto std2 = metacyclic_label(2, 1, 1, 1);
    REQUIRE(admissible_eigenvalues(std2, 5, 1) == std::vector<Residue>{Residue(1, 5), Residue(4, 5)});

    SECTION("r = 0 forces the trivial eigenvalue only") {
        const auto std5 = metacyclic_label(5, 1, 1, 1);
        REQUIRE(admissible_eigenvalues(std5, 7, 1) == std::vector<Residue>{Residue(1, 7)});
    }
    SECTION("count is exactly q^m over a sweep") {
        for (auto [p, d] : std::vector<std::pair<i64, int>>{{3, 1}, {3, 2}, {5, 1}, {7, 1}, {13, 1}}) {
            for (const auto& ql : enumerate_prime_power_labels(2, 3)) {
                const int r = valuation(p - 1, 2);
                const int m = std::min(f_invariant(ql), r);
                REQUIRE(static_cast<i64>(admissible_eigenvalues(ql, p, d).size()) == ipow(2, m));
            }
        }
    }
    SECTION("q = p and even p are contract errors") {
        REQUIRE_THROWS_AS(admissible_eigenvalues(std3, 3, 1), ContractError);
        REQUIRE_THROWS_AS(admissible_eigenvalues(std3, 2, 1), ContractError);
    }
}
