#include "mert/criterion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <map>
#include <stdexcept>

#include "mert/moebius.hpp"

namespace mert {
namespace {

void fold_running_sup(std::vector<ScanRecord>& recs) {
    double sup = 0.0;
    for (auto& r : recs) {
        if (r.exponent) sup = std::max(sup, *r.exponent);
        r.running_sup = sup;
    }
}

}  // namespace

std::optional<double> growth_exponent(i64 magnitude, u64 n) {
    if (n == 0) throw std::invalid_argument("growth_exponent: n must be >= 1");
    if (magnitude == 0 || n == 1) return std::nullopt;
    const u64 a = magnitude < 0 ? -static_cast<u64>(magnitude)
                                : static_cast<u64>(magnitude);
    return std::log(static_cast<double>(a)) / std::log(static_cast<double>(n));
}

std::vector<ScanRecord> scan_double_sum(u64 n_min, u64 n_max, u64 stride,
                                        unsigned threads) {
    if (n_min < 2) throw std::invalid_argument("scan_double_sum: n_min must be >= 2");
    if (n_min > n_max) throw std::invalid_argument("scan_double_sum: n_min must be <= n_max");
    if (stride == 0) throw std::invalid_argument("scan_double_sum: stride must be >= 1");
    if (threads == 0) threads = 1;

    std::vector<u64> points;
    for (u64 n = n_min; n <= n_max; n += stride) points.push_back(n);

    const MertensTable table = mertens_table(n_max);
    std::vector<ScanRecord> recs(points.size());
    auto fill = [&](size_t i) {
        const u64 n = points[i];
        const i64 s = double_sum_blocked(n, table, 1).s;
        recs[i] = {.n = n, .magnitude = s, .exponent = growth_exponent(s, n)};
    };
    if (threads == 1 || points.size() < 2) {
        for (size_t i = 0; i < points.size(); ++i) fill(i);
    } else {
        // Parallel across scan points; each slot is written exactly once.
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= points.size()) break;
                fill(i);
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned t = 1; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        worker();
        for (auto& f : futs) f.get();
    }
    fold_running_sup(recs);
    return recs;
}

std::vector<ScanRecord> scan_difference(std::span<const u64> xs,
                                        const StreamConfig& cfg) {
    return scan_difference_checkpointed(xs, {}, cfg).records;
}

DifferenceScan scan_difference_checkpointed(std::span<const u64> xs,
                                            std::span<const CheckpointRecord> known,
                                            const StreamConfig& cfg) {
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1 || (i > 0 && xs[i] <= xs[i - 1]))
            throw std::invalid_argument(
                "scan_difference: points must be strictly ascending and >= 1");
    }
    for (size_t i = 0; i < known.size(); ++i) {
        const auto& r = known[i];
        const u64 am = r.m < 0 ? -static_cast<u64>(r.m) : static_cast<u64>(r.m);
        if (r.x < 1 || am > r.x || (i > 0 && r.x <= known[i - 1].x))
            throw std::invalid_argument("scan_difference: malformed checkpoint set");
    }

    std::vector<u64> needed;
    needed.reserve(xs.size() * 2);
    for (u64 x : xs) {
        needed.push_back(x);
        if (x / 2 >= 1) needed.push_back(x / 2);
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

    std::map<u64, i64> have;
    for (const auto& r : known) have[r.x] = r.m;

    std::vector<u64> missing;
    for (u64 x : needed)
        if (!have.count(x)) missing.push_back(x);

    if (!missing.empty()) {
        StreamConfig pass = cfg;
        pass.resume = best_resume(known, missing.front());
        for (const CheckpointRecord& r : mertens_many(missing, pass)) have[r.x] = r.m;
    }

    DifferenceScan out;
    out.records.reserve(xs.size());
    for (u64 x : xs) {
        const i64 m_x = have.at(x);
        const i64 m_half = x / 2 >= 1 ? have.at(x / 2) : 0;
        const i64 d = m_x - 2 * m_half;
        out.records.push_back({.n = x, .magnitude = d, .exponent = growth_exponent(d, x)});
    }
    fold_running_sup(out.records);
    out.checkpoints.reserve(have.size());
    for (const auto& [x, m] : have) out.checkpoints.push_back({x, m});
    return out;
}

SeriesCoefficient series_coefficient(u64 m) {
    if (m == 0) throw std::invalid_argument("series_coefficient: m must be >= 1");
    i64 c = mobius_single(m);
    if (m % 2 == 0) c -= 2 * mobius_single(m / 2);
    return {m, c};
}

bool partial_sum_check(u64 x) {
    if (x == 0) throw std::invalid_argument("partial_sum_check: x must be >= 1");
    return partial_sum_check(x, sieve_full(x));
}

bool partial_sum_check(u64 x, const MoebiusBlock& mu) {
    if (x == 0) throw std::invalid_argument("partial_sum_check: x must be >= 1");
    if (mu.lo > 1 || mu.hi < x)
        throw std::invalid_argument("partial_sum_check: mu block must cover [1, x]");
    i64 coeff_sum = 0;
    for (u64 m = 1; m <= x; ++m) {
        coeff_sum += mu.at(m);
        if (m % 2 == 0) coeff_sum -= 2 * mu.at(m / 2);
    }
    i64 m_x = 0, m_half = 0;
    for (u64 i = 1; i <= x; ++i) {
        m_x += mu.at(i);
        if (i == x / 2) m_half = m_x;
    }
    return coeff_sum == m_x - 2 * m_half;
}

u64 partial_sum_check_sweep(u64 x_max) {
    if (x_max == 0) throw std::invalid_argument("partial_sum_check_sweep: x_max must be >= 1");
    const MoebiusBlock mu = sieve_full(x_max);
    // One pass maintains both sides of the identity for every prefix at once;
    // floor(x/2) advances exactly when x is even.
    i64 coeff_sum = 0, m_x = 0, m_half = 0;
    u64 half = 0;
    for (u64 x = 1; x <= x_max; ++x) {
        coeff_sum += mu.at(x);
        m_x += mu.at(x);
        if (x % 2 == 0) {
            coeff_sum -= 2 * mu.at(x / 2);
            ++half;
            m_half += mu.at(half);
        }
        if (coeff_sum != m_x - 2 * m_half) return x;
    }
    return 0;
}

std::vector<u64> geometric_grid(u64 x_max, unsigned per_decade) {
    if (per_decade == 0)
        throw std::invalid_argument("geometric_grid: per_decade must be >= 1");
    if (x_max == 0) throw std::invalid_argument("geometric_grid: x_max must be >= 1");
    std::vector<u64> out;
    for (unsigned i = 0;; ++i) {
        const unsigned dec = i / per_decade;
        u64 x;
        if (i % per_decade == 0) {
            if (dec >= 20) break;
            x = 1;
            for (unsigned d = 0; d < dec; ++d) x *= 10;
        } else {
            const long double lx =
                powl(10.0L, static_cast<long double>(i) / per_decade);
            if (lx >= 1.8e19L) break;
            x = static_cast<u64>(lx);
        }
        if (x > x_max) break;
        if (out.empty() || x > out.back()) out.push_back(x);
    }
    return out;
}

}  // namespace mert
