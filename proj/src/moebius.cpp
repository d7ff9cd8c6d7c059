#include "mert/moebius.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mert {

i8 MoebiusBlock::at(u64 n) const {
    if (n < lo || n > hi)
        throw std::out_of_range("MoebiusBlock::at: " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return values[n - lo];
}

i8 mobius_single(u64 n) {
    if (n == 0) throw std::domain_error("mobius_single: mu is undefined at 0");
    int factors = 0;
    if (n % 2 == 0) {
        n /= 2;
        if (n % 2 == 0) return 0;
        ++factors;
    }
    for (u64 d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors & 1) ? i8(-1) : i8(1);
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

MoebiusBlock sieve_full(u64 n, u64 memory_budget_bytes) {
    if (n == 0) throw std::invalid_argument("sieve_full: n must be >= 1");
    // mu (1 byte) + spf (4 bytes) per entry, plus the prime list
    u64 estimated = (n + 1) * 6;
    if (estimated > memory_budget_bytes || n > 0xFFFFFFFFull)
        throw std::length_error(
            "sieve_full: n = " + std::to_string(n) + " needs about " +
            std::to_string(estimated >> 20) + " MiB (budget " +
            std::to_string(memory_budget_bytes >> 20) + " MiB); use sieve_segment");

    MoebiusBlock block;
    block.lo = 1;
    block.hi = n;
    block.values.assign(n, 0);
    std::vector<u32> spf(n + 1, 0);
    std::vector<u32> primes;

    auto mu = [&](u64 v) -> i8& { return block.values[v - 1]; };
    mu(1) = 1;
    for (u64 i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<u32>(i);
            mu(i) = -1;
            primes.push_back(static_cast<u32>(i));
        }
        for (u32 p : primes) {
            if (p > spf[i] || i * p > n) break;
            spf[i * p] = p;
            mu(i * p) = (p == spf[i]) ? i8(0) : i8(-mu(i));
        }
    }
    return block;
}

namespace {

bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

// The segment algorithm needs every prime <= sqrt(hi); scan for a gap past
// the largest supplied prime.
void check_prime_cover(u64 hi, std::span<const u64> primes) {
    u64 root = isqrt(hi);
    if (root < 2) return;
    u64 have = primes.empty() ? 1 : primes.back();
    for (u64 m = have + 1; m <= root; ++m)
        if (is_prime_trial(m))
            throw std::invalid_argument(
                "sieve_segment: prime list is missing " + std::to_string(m) +
                " <= sqrt(hi) = " + std::to_string(root));
}

}  // namespace

void sieve_segment_into(u64 lo, u64 hi, std::span<const u64> primes,
                        std::span<i8> out, std::span<u64> scratch) {
    u64 len = hi - lo + 1;
    std::fill(out.begin(), out.begin() + len, i8(1));
    std::fill(scratch.begin(), scratch.begin() + len, u64(1));

    u64 root = isqrt(hi);
    for (u64 p : primes) {
        if (p > root) break;
        // first multiple of p in [lo, hi], overflow-free
        u64 q = (lo - 1) / p + 1;
        if (q <= hi / p) {
            for (u64 m = q * p; m <= hi; m += p) {
                out[m - lo] = static_cast<i8>(-out[m - lo]);
                scratch[m - lo] *= p;
            }
        }
        u64 pp = p * p;
        u64 q2 = (lo - 1) / pp + 1;
        if (q2 <= hi / pp)
            for (u64 m = q2 * pp; m <= hi; m += pp) out[m - lo] = 0;
    }
    // entries whose tracked product falls short of the value still carry one
    // prime factor > sqrt(hi)
    for (u64 i = 0; i < len; ++i)
        if (out[i] != 0 && scratch[i] != lo + i) out[i] = static_cast<i8>(-out[i]);
}

MoebiusBlock sieve_segment(u64 lo, u64 hi, std::span<const u64> primes) {
    if (lo < 1 || lo > hi)
        throw std::invalid_argument("sieve_segment: need 1 <= lo <= hi");
    check_prime_cover(hi, primes);

    MoebiusBlock block;
    block.lo = lo;
    block.hi = hi;
    block.values.assign(hi - lo + 1, 0);
    std::vector<u64> scratch(hi - lo + 1);
    sieve_segment_into(lo, hi, primes, block.values, scratch);
    return block;
}

}  // namespace mert
