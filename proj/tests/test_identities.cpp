#include "doctest.h"
#include "mert/identities.hpp"

#include <random>
#include <stdexcept>

using namespace mert;

TEST_CASE("bracket values and argument checks") {
    // floor(11/1) - 2*floor(11/2) = 11 - 10
    CHECK(bracket(11, 1, 1).value == 1);
    CHECK(bracket(10, 1, 1).value == 0);
    // floor(7/2) - 2*floor(7/4) = 3 - 2
    CHECK(bracket(7, 2, 1).value == 1);
    CHECK(bracket(100, 3, 7).value == 0);  // 4 - 2*2
    CHECK(bracket(100, 3, 5).value == 0);  // 6 - 2*3
    CHECK(bracket(1, 2, 3).value == 0);    // jk > m
    const BracketTerm t = bracket(7, 2, 1);
    CHECK(t.m == 7);
    CHECK(t.j == 2);
    CHECK(t.k == 1);
    CHECK_THROWS_AS((void)bracket(0, 1, 1), std::domain_error);
    CHECK_THROWS_AS((void)bracket(10, 0, 1), std::domain_error);
    CHECK_THROWS_AS((void)bracket(10, 1, 0), std::domain_error);
}

TEST_CASE("bracket is 0/1-valued and equals the quotient parity, incl. huge inputs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const u64 m = rng() % 100000 + 1;
        const u64 j = rng() % m + 1;
        const u64 k = rng() % m + 1;
        const int v = bracket(m, j, k).value;
        CHECK((v == 0 || v == 1));
        const u64 q = floor_div_prod(m, j, k);
        CHECK(v == static_cast<int>(q & 1));
    }
    // products far beyond 64 bits must not wrap
    CHECK(bracket(~u64(0), ~u64(0), ~u64(0)).value == 0);
    CHECK(bracket(~u64(0), 1, 1).value == 1);  // 2^64-1 is odd
}

TEST_CASE("nested floors collapse for all positive integers") {
    for (u64 m = 1; m <= 60; ++m)
        for (u64 j = 1; j <= 60; ++j)
            for (u64 k = 1; k <= 60; ++k) CHECK(nested_floor_check(m, j, k));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5000; ++i) {
        u64 m = rng(), j = rng(), k = rng();
        if (m == 0) m = 1;
        if (j == 0) j = 1;
        if (k == 0) k = 1;
        CHECK(nested_floor_check(m, j, k));
    }
}

TEST_CASE("Meissel sum is identically 1") {
    for (u64 m = 1; m <= 2000; ++m) CHECK(meissel_sum(m) == 1);

    const MoebiusBlock mu = sieve_full(3000);
    CHECK(meissel_sum(3000, mu) == 1);

    const MertensTable table = mertens_table(50000);
    for (u64 m : {u64(1), u64(2), u64(10), u64(97), u64(1000), u64(12345), u64(50000)})
        CHECK(meissel_sum_blocked(m, table) == 1);

    // blocked evaluation agrees with the direct sum everywhere, not just at 1
    for (u64 m = 1; m <= 500; ++m) CHECK(meissel_sum_blocked(m, table) == meissel_sum(m));
}

TEST_CASE("meissel_sum argument checks") {
    CHECK_THROWS_AS((void)meissel_sum(0), std::invalid_argument);
    const MertensTable t = mertens_table(10);
    CHECK_THROWS_AS((void)meissel_sum_blocked(100, t), std::invalid_argument);
}

TEST_CASE("scaled Meissel sum equals 1 for every j <= m") {
    CHECK(meissel_sum_scaled(10, 3) == 1);
    const MoebiusBlock mu = sieve_full(200);
    for (u64 m = 1; m <= 200; ++m)
        for (u64 j = 1; j <= m; ++j) CHECK(meissel_sum_scaled(m, j, mu) == 1);
    CHECK_THROWS_AS((void)meissel_sum_scaled(10, 11), std::invalid_argument);
    CHECK_THROWS_AS((void)meissel_sum_scaled(0, 1), std::invalid_argument);
}

TEST_CASE("bracketed mu sum follows the half-range sign split") {
    CHECK(bracket_mu_sum(10, 3) == -1);  // 2j = 6 <= 10
    CHECK(bracket_mu_sum(10, 7) == 1);   // 2j = 14 > 10
    CHECK(bracket_mu_sum(2, 2) == 1);
    CHECK(bracket_mu_sum(2, 1) == -1);
    CHECK(bracket_mu_sum(1, 1) == 1);    // 2j = 2 > 1
    const MoebiusBlock mu = sieve_full(200);
    for (u64 m = 1; m <= 200; ++m)
        for (u64 j = 1; j <= m; ++j)
            CHECK(bracket_mu_sum(m, j, mu) == (2 * j <= m ? -1 : 1));
    CHECK_THROWS_AS((void)bracket_mu_sum(10, 11), std::invalid_argument);
}

TEST_CASE("verify_identities runs every suite clean") {
    VerifyConfig cfg;
    cfg.sum_m_max = 60;
    cfg.meissel_max = 3000;
    cfg.nested_max = 40;
    cfg.bracket_m_max = 80;
    cfg.bracket_budget = 200000;
    cfg.random_cases = 100;
    cfg.random_m_max = 2000;
    cfg.nested_random = 500;
    cfg.seed = 99;  // identities hold for every seed

    const auto results = verify_identities(cfg);
    REQUIRE(results.size() == 5);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.ok());
        CHECK(r.cases > 0);
        CHECK(r.failures == 0);
        CHECK(r.first_counterexample.empty());
        CHECK(r.elapsed_s >= 0.0);
    }
}
