#include <catch2/catch_amalgamated.hpp>

#include "bipmap/numthy.hpp"

using namespace bipmap;

TEST_CASE("factorize basics") {
    REQUIRE(factorize(90) == Factorization{{5, 1}, {3, 2}, {2, 1}});
    REQUIRE(factorize(1).empty());
    REQUIRE(factorize(105) == Factorization{{7, 1}, {5, 1}, {3, 1}});
    REQUIRE_THROWS_AS(factorize(0), ContractError);
}

TEST_CASE("factorize recomposes over the whole test range") {
    for (i64 n = 1; n <= 1000000; ++n) {
        i64 prod = 1;
        i64 prev_p = std::numeric_limits<i64>::max();
        for (const auto& [p, e] : factorize(n)) {
            REQUIRE(p < prev_p);
            prev_p = p;
            prod *= ipow(p, e);
        }
        if (prod != n) FAIL("factorize does not recompose at n = " << n);
    }
}

TEST_CASE("euler phi") {
    REQUIRE(euler_phi(1) == 1);
    REQUIRE(euler_phi(9) == 6);
    // phi(p^{e-f}) with p=3, e=2, f=1: the number of maps M(9,1,u)
    REQUIRE(euler_phi(ipow(3, 2 - 1)) == 2);
}

TEST_CASE("crt_combine") {
    REQUIRE(crt_combine({Residue(2, 7)}) == Residue(2, 7));
    REQUIRE(crt_combine({Residue(4, 5), Residue(2, 3)}) == Residue(14, 15));
    REQUIRE(crt_combine({Residue(0, 1)}) == Residue(0, 1));
    REQUIRE_THROWS_AS(crt_combine({Residue(1, 6), Residue(1, 4)}), ContractError);

    SECTION("result reduces back to each congruence") {
        std::mt19937_64 rng(42);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<i64> mods{2 + static_cast<i64>(rng() % 30), 0, 0};
            do { mods[1] = 2 + static_cast<i64>(rng() % 30); } while (std::gcd(mods[0], mods[1]) != 1);
            do {
                mods[2] = 2 + static_cast<i64>(rng() % 30);
            } while (std::gcd(mods[2], mods[0] * mods[1]) != 1);
            std::vector<Residue> congs;
            for (i64 m : mods) congs.emplace_back(static_cast<i64>(rng() % m), m);
            Residue r = crt_combine(congs);
            REQUIRE(r.modulus == mods[0] * mods[1] * mods[2]);
            for (const Residue& c : congs) REQUIRE(r.value % c.modulus == c.value);
        }
    }
}

TEST_CASE("multiplicative order") {
    REQUIRE(multiplicative_order(Residue(1, 17)) == 1);
    REQUIRE(multiplicative_order(Residue(1, 1)) == 1);
    REQUIRE(multiplicative_order(Residue(2, 7)) == 3);
    REQUIRE(multiplicative_order(Residue(14, 15)) == 2);
    REQUIRE_THROWS_AS(multiplicative_order(Residue(6, 15)), ContractError);

    SECTION("order divides phi(modulus)") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 300; ++trial) {
            i64 m = 2 + static_cast<i64>(rng() % 500);
            i64 a = 1 + static_cast<i64>(rng() % (m - 1));
            if (std::gcd(a, m) != 1) continue;
            REQUIRE(euler_phi(m) % multiplicative_order(Residue(a, m)) == 0);
        }
    }
}

TEST_CASE("pi_part") {
    REQUIRE(pi_part(90, {3, 5}) == 45);
    REQUIRE(pi_part(90, {}) == 1);
    REQUIRE(pi_part(21, {7}) == 7);

    SECTION("complementary prime sets multiply back to n") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            i64 n = 1 + static_cast<i64>(rng() % 100000);
            std::set<i64> pi, pi_dash;
            for (const auto& [p, e] : factorize(n)) (rng() % 2 ? pi : pi_dash).insert(p);
            REQUIRE(pi_part(n, pi) * pi_part(n, pi_dash) == n);
        }
    }
}

TEST_CASE("valuation") {
    REQUIRE(valuation(90, 3) == 2);
    REQUIRE(valuation(90, 7) == 0);
    REQUIRE(valuation(4, 2) == 2);
}
