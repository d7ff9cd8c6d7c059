#pragma once

#include <cstdint>

namespace mert {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;
using i8 = std::int8_t;
using u128 = unsigned __int128;

// floor(sqrt(n)), exact for the full u64 range
inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(__builtin_sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// floor(m / (a*b)) with the product taken in 128 bits; 0 when a*b > m
inline u64 floor_div_prod(u64 m, u64 a, u64 b) {
    u128 p = static_cast<u128>(a) * b;
    if (p > m) return 0;
    return m / static_cast<u64>(p);
}

// floor(m / (2*a*b)), same guard
inline u64 floor_div_prod2(u64 m, u64 a, u64 b) {
    u128 p = static_cast<u128>(a) * b * 2u;
    if (p > m) return 0;
    return m / static_cast<u64>(p);
}

}  // namespace mert
