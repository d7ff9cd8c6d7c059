#pragma once

#include <span>
#include <vector>

#include "mert/ints.hpp"

namespace mert {

// Cap on bytes sieve_full may allocate before the caller is told to switch
// to the segmented sieve.
inline constexpr u64 kDefaultMemoryBudget = u64(2) << 30;  // 2 GiB

inline constexpr u64 kDefaultSegmentLen = u64(1) << 20;

// mu over a contiguous window [lo, hi]; values[i] = mu(lo + i).
// Immutable after construction, safe to share between threads.
struct MoebiusBlock {
    u64 lo = 1;
    u64 hi = 0;
    std::vector<i8> values;

    u64 size() const { return hi - lo + 1; }
    i8 at(u64 n) const;  // n must lie in [lo, hi]
};

// mu(n) by trial factorization. Throws std::domain_error for n = 0.
i8 mobius_single(u64 n);

// All primes <= limit by plain Eratosthenes.
std::vector<u64> primes_up_to(u64 limit);

// mu(1..n) via the linear (smallest-prime-factor) sieve.
// Throws std::length_error when the estimated footprint exceeds the budget.
MoebiusBlock sieve_full(u64 n, u64 memory_budget_bytes = kDefaultMemoryBudget);

// mu(lo..hi) via the segmented sieve; primes must contain every prime <= sqrt(hi)
// (throws std::invalid_argument if one is missing).
MoebiusBlock sieve_segment(u64 lo, u64 hi, std::span<const u64> primes);

// In-place segment fill for streaming passes. out and scratch must each hold
// hi - lo + 1 entries; primes are not re-validated here.
void sieve_segment_into(u64 lo, u64 hi, std::span<const u64> primes,
                        std::span<i8> out, std::span<u64> scratch);

}  // namespace mert
