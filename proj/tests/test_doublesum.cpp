#include "doctest.h"
#include "mert/doublesum.hpp"

#include <random>
#include <stdexcept>
#include <string>

using namespace mert;

namespace {
// S(1)..S(12), brute-forced once from the definition and frozen.
const i64 kSmallS[] = {1, 1, 2, -1, 2, -1, 3, -3, 8, -5, 5, -1};
}

TEST_CASE("naive double sum reproduces the frozen small values") {
    const MoebiusBlock mu = sieve_full(12);
    for (u64 n = 1; n <= 12; ++n) {
        const DoubleSumResult r = double_sum_naive(n, mu);
        CHECK(r.s == kSmallS[n - 1]);
        CHECK(r.n == n);
        CHECK(r.method == Method::naive);
    }
    // the self-sieving overload agrees
    CHECK(double_sum_naive(9).s == 8);
}

TEST_CASE("blocked method equals naive on a dense range") {
    const u64 top = 300;
    const MoebiusBlock mu = sieve_full(top);
    const MertensTable table = mertens_table(top);
    for (u64 n = 1; n <= top; ++n) {
        const i64 a = double_sum_naive(n, mu).s;
        const DoubleSumResult b = double_sum_blocked(n, table);
        CHECK(a == b.s);
        CHECK(b.method == Method::blocked);
        CHECK(b.inner_blocks > 0);
    }
}

TEST_CASE("blocked method is thread-count invariant") {
    const MertensTable table = mertens_table(2500);
    const i64 ref = double_sum_blocked(2500, table, 1).s;
    for (unsigned th : {2u, 3u, 8u}) CHECK(double_sum_blocked(2500, table, th).s == ref);
}

TEST_CASE("double sum argument checks") {
    CHECK_THROWS_AS((void)double_sum_naive(0), std::invalid_argument);
    CHECK_THROWS_AS((void)double_sum_naive(3'000'000'001ULL), std::domain_error);
    const MoebiusBlock mu = sieve_full(10);
    CHECK_THROWS_AS((void)double_sum_naive(11, mu), std::invalid_argument);
    const MertensTable t = mertens_table(10);
    CHECK_THROWS_AS((void)double_sum_blocked(11, t), std::invalid_argument);
    CHECK_THROWS_AS((void)double_sum_blocked(0, t), std::invalid_argument);
}

TEST_CASE("method_name strings") {
    CHECK(std::string(method_name(Method::naive)) == "naive");
    CHECK(std::string(method_name(Method::blocked)) == "blocked");
}

TEST_CASE("the exact identity has zero residual for n >= 2") {
    for (u64 n = 2; n <= 60; ++n) {
        CHECK(identity_residual(n, Method::blocked) == 0);
    }
    for (u64 n : {u64(2), u64(3), u64(10), u64(37)})
        CHECK(identity_residual(n, Method::naive) == 0);
    CHECK_THROWS_AS((void)identity_residual(1), std::invalid_argument);
    CHECK_THROWS_AS((void)identity_residual(0), std::invalid_argument);
}

TEST_CASE("batched residuals match singles and keep input order") {
    const std::vector<u64> ns{950, 2, 333, 17, 333};
    const auto batch = identity_residuals(ns, Method::blocked);
    REQUIRE(batch.size() == ns.size());
    for (i64 r : batch) CHECK(r == 0);
    CHECK(identity_residuals({}, Method::naive).empty());
}

TEST_CASE("residual stays zero at random larger n with the blocked method") {
    std::mt19937_64 rng(21);
    std::vector<u64> ns;
    for (int i = 0; i < 5; ++i) ns.push_back(rng() % 4000 + 2);
    for (i64 r : identity_residuals(ns, Method::blocked)) CHECK(r == 0);
}
