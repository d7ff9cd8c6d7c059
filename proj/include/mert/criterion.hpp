#pragma once

#include <optional>

#include "mert/doublesum.hpp"

namespace mert {

// One row of a scan: n (or x), the signed magnitude S(n) or D(x), the growth
// exponent log|magnitude|/log n (absent when magnitude = 0 or n = 1), and the
// largest exponent seen so far in the scan (0 until one exists).
struct ScanRecord {
    u64 n = 0;
    i64 magnitude = 0;
    std::optional<double> exponent;
    double running_sup = 0.0;
};

std::optional<double> growth_exponent(i64 magnitude, u64 n);

// S(n) for n = n_min, n_min + stride, ... <= n_max via the blocked method.
std::vector<ScanRecord> scan_double_sum(u64 n_min, u64 n_max, u64 stride,
                                        unsigned threads = 1);

// D(x) = M(x) - 2 M(floor(x/2)) at the given points (strictly ascending);
// one streaming pass answers both x and floor(x/2) for every point.
std::vector<ScanRecord> scan_difference(std::span<const u64> xs,
                                        const StreamConfig& cfg = {});

// Same scan, seeded from previously checkpointed Mertens values.  Points
// already covered by `known` cost nothing; the streaming pass for the rest
// resumes from the largest usable checkpoint.  `checkpoints` merges the old
// records with every value established by this scan, ready to be written back.
struct DifferenceScan {
    std::vector<ScanRecord> records;
    std::vector<CheckpointRecord> checkpoints;
};
DifferenceScan scan_difference_checkpointed(std::span<const u64> xs,
                                            std::span<const CheckpointRecord> known,
                                            const StreamConfig& cfg = {});

// c(m) = mu(m) - 2 mu(m/2) [m even]: the coefficient of m^-s in (1 - 2^(1-s))/zeta(s).
struct SeriesCoefficient {
    u64 m = 0;
    i64 c = 0;
};
SeriesCoefficient series_coefficient(u64 m);

// Verifies sum_{m <= x} c(m) == D(x), the partial-sum form of the identity
// behind the difference statistic.
bool partial_sum_check(u64 x);
bool partial_sum_check(u64 x, const MoebiusBlock& mu);

// Runs the same check for every x in [1, x_max] in one linear pass; returns
// the first failing x, or 0 when the identity holds everywhere.
u64 partial_sum_check_sweep(u64 x_max);

// Ascending sample points 10^(i/per_decade) rounded down, deduplicated,
// capped at x_max; exact powers of ten appear exactly.
std::vector<u64> geometric_grid(u64 x_max, unsigned per_decade = 12);

}  // namespace mert
