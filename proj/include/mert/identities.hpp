#pragma once

#include <string>
#include <vector>

#include "mert/mertens.hpp"

namespace mert {

// The {0,1}-valued term floor(m/(jk)) - 2*floor(m/(2jk)).
struct BracketTerm {
    u64 m = 0;
    u64 j = 0;
    u64 k = 0;
    int value = 0;
};

// Throws std::domain_error when any argument is 0. Products are taken in
// 128 bits, so the full u64 range is safe.
BracketTerm bracket(u64 m, u64 j, u64 k);

// true iff floor(floor(m/j)/k) == floor(m/(jk)); holds for all positive
// integers, checked numerically.
bool nested_floor_check(u64 m, u64 j, u64 k);

// Meissel's identity: sum_{k<=m} floor(m/k) mu(k) = 1 for every m >= 1.
// Direct summation; the MoebiusBlock overload needs mu over [1, m].
i64 meissel_sum(u64 m);
i64 meissel_sum(u64 m, const MoebiusBlock& mu);
// Same value in O(sqrt m) by iterating constant-quotient blocks against a
// Mertens table covering [1, m].
i64 meissel_sum_blocked(u64 m, const MertensTable& table);

// sum_{k<=m} floor(m/(jk)) mu(k); equals 1 whenever j <= m.
// Throws std::invalid_argument for j > m (the identity is only asserted there).
i64 meissel_sum_scaled(u64 m, u64 j, const MoebiusBlock& mu);
i64 meissel_sum_scaled(u64 m, u64 j);

// sum_{k<=m} bracket(m,j,k) mu(k); equals -1 when 2j <= m and +1 when
// m/2 < j <= m. Throws std::invalid_argument for j > m.
i64 bracket_mu_sum(u64 m, u64 j, const MoebiusBlock& mu);
i64 bracket_mu_sum(u64 m, u64 j);

// --- sweep drivers (used by the CLI `verify` subcommand) ---

struct SweepResult {
    std::string name;
    u64 cases = 0;
    u64 failures = 0;
    std::string first_counterexample;  // empty when clean
    double elapsed_s = 0.0;

    bool ok() const { return failures == 0; }
};

struct VerifyConfig {
    u64 sum_m_max = 400;         // exhaustive (m, j) range for the mu-sum identities
    u64 meissel_max = 100000;    // meissel_sum check for every m up to here
    u64 nested_max = 500;        // exhaustive m, j, k cube for nested floors
    u64 bracket_m_max = 1000;    // bracket range/parity sweep
    u64 bracket_budget = 10'000'000;  // max sampled (m, j, k) triples
    u64 random_cases = 1000;     // random (m, j) pairs per mu-sum identity
    u64 random_m_max = 10000;
    u64 nested_random = 10000;   // random full-range triples for nested floors
    u64 seed = 1;
};

std::vector<SweepResult> verify_identities(const VerifyConfig& cfg = {});

}  // namespace mert
