#include "mert/doublesum.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <map>
#include <stdexcept>

namespace mert {
namespace {

// n^2 must fit in u64 with headroom for the u128-guarded 2jk path.
constexpr u64 kMaxDoubleSumN = 3'000'000'000ULL;

void check_n(u64 n) {
    if (n == 0) throw std::invalid_argument("double_sum: n must be >= 1");
    if (n > kMaxDoubleSumN)
        throw std::domain_error("double_sum: n^2 would overflow 64 bits");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const char* method_name(Method m) {
    return m == Method::naive ? "naive" : "blocked";
}

DoubleSumResult double_sum_naive(u64 n) {
    check_n(n);
    return double_sum_naive(n, sieve_full(n));
}

DoubleSumResult double_sum_naive(u64 n, const MoebiusBlock& mu) {
    check_n(n);
    if (mu.lo > 1 || mu.hi < n)
        throw std::invalid_argument("double_sum_naive: mu block must cover [1, n]");
    const auto t0 = std::chrono::steady_clock::now();
    const u64 nn = n * n;
    i64 s = 0;
    for (u64 j = 1; j <= n; ++j) {
        const i64 vj = mu.at(j);
        if (vj == 0) continue;
        i64 inner = 0;
        for (u64 k = 1; k <= n; ++k) {
            const i64 vk = mu.at(k);
            if (vk == 0) continue;
            // Definitional form, two divisions; the value is always 0 or 1.
            const u64 q = nn / (j * k);
            const u64 h = floor_div_prod2(nn, j, k);
            if (q - 2 * h != 0) inner += vk;
        }
        s += vj * inner;
    }
    return {.n = n, .s = s, .method = Method::naive,
            .elapsed_s = seconds_since(t0), .inner_blocks = 0};
}

DoubleSumResult double_sum_blocked(u64 n, const MertensTable& table, unsigned threads) {
    check_n(n);
    if (table.n_max() < n)
        throw std::invalid_argument("double_sum_blocked: Mertens table must cover [1, n]");
    if (threads == 0) threads = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const u64 nn = n * n;

    // mu(j) recovered from the prefix table itself; bracket(n^2, j, k) equals
    // the parity of floor(n^2 / (j k)), so each constant-quotient block with
    // odd quotient contributes a Mertens range sum over k.
    auto run_j = [&](u64 j) -> std::pair<i64, u64> {
        const i64 mu_j = table.prefix[j] - table.prefix[j - 1];
        if (mu_j == 0) return {0, 0};
        const u64 mj = nn / j;
        i64 inner = 0;
        u64 blocks = 0;
        u64 k = 1;
        while (k <= n) {
            const u64 q = mj / k;
            const u64 k2 = std::min(n, mj / q);
            if (q & 1) inner += table.prefix[k2] - table.prefix[k - 1];
            ++blocks;
            k = k2 + 1;
        }
        return {mu_j * inner, blocks};
    };

    i64 s = 0;
    u64 blocks = 0;
    if (threads == 1 || n < 1024) {
        for (u64 j = 1; j <= n; ++j) {
            auto [ds, db] = run_j(j);
            s += ds;
            blocks += db;
        }
    } else {
        // Dynamic chunking; integer partial sums make the total independent
        // of scheduling order.
        constexpr u64 kChunk = 512;
        std::atomic<u64> next{1};
        auto worker = [&]() -> std::pair<i64, u64> {
            i64 ws = 0;
            u64 wb = 0;
            for (;;) {
                const u64 lo = next.fetch_add(kChunk);
                if (lo > n) break;
                const u64 hi = std::min(n, lo + kChunk - 1);
                for (u64 j = lo; j <= hi; ++j) {
                    auto [ds, db] = run_j(j);
                    ws += ds;
                    wb += db;
                }
            }
            return {ws, wb};
        };
        std::vector<std::future<std::pair<i64, u64>>> futs;
        for (unsigned t = 1; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        auto [ms, mb] = worker();
        s += ms;
        blocks += mb;
        for (auto& f : futs) {
            auto [ws, wb] = f.get();
            s += ws;
            blocks += wb;
        }
    }
    return {.n = n, .s = s, .method = Method::blocked,
            .elapsed_s = seconds_since(t0), .inner_blocks = blocks};
}

i64 identity_residual(u64 n, Method method) {
    const u64 ns[1] = {n};
    return identity_residuals(ns, method)[0];
}

std::vector<i64> identity_residuals(std::span<const u64> ns, Method method,
                                    const StreamConfig& cfg) {
    if (ns.empty()) return {};
    u64 n_top = 0;
    for (u64 n : ns) {
        if (n < 2)
            throw std::invalid_argument("identity_residual: n must be >= 2 "
                                        "(the two sides differ at n = 1)");
        if (n > kMaxDoubleSumN)
            throw std::domain_error("identity_residual: n^2 would overflow 64 bits");
        n_top = std::max(n_top, n);
    }

    std::vector<u64> queries;
    queries.reserve(ns.size() * 3);
    for (u64 n : ns) {
        queries.push_back(n);
        queries.push_back(n * n / 2);
        queries.push_back(n * n);
    }
    std::sort(queries.begin(), queries.end());
    queries.erase(std::unique(queries.begin(), queries.end()), queries.end());

    std::map<u64, i64> m;
    for (const CheckpointRecord& r : mertens_many(queries, cfg)) m[r.x] = r.m;

    // One sieve / table up to max n serves every S(n) evaluation.
    std::vector<i64> out;
    out.reserve(ns.size());
    if (method == Method::naive) {
        const MoebiusBlock mu = sieve_full(n_top);
        for (u64 n : ns) {
            const i64 s = double_sum_naive(n, mu).s;
            out.push_back(m[n * n] - 2 * m[n * n / 2] + s + 2 * m[n]);
        }
    } else {
        const MertensTable table = mertens_table(n_top);
        for (u64 n : ns) {
            const i64 s = double_sum_blocked(n, table, cfg.threads).s;
            out.push_back(m[n * n] - 2 * m[n * n / 2] + s + 2 * m[n]);
        }
    }
    return out;
}

}  // namespace mert
