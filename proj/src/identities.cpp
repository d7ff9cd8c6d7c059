#include "mert/identities.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

namespace mert {

BracketTerm bracket(u64 m, u64 j, u64 k) {
    if (m == 0 || j == 0 || k == 0)
        throw std::domain_error("bracket: arguments must be >= 1");
    u64 a = floor_div_prod(m, j, k);
    u64 b = floor_div_prod2(m, j, k);
    return {m, j, k, static_cast<int>(a - 2 * b)};
}

bool nested_floor_check(u64 m, u64 j, u64 k) {
    if (m == 0 || j == 0 || k == 0)
        throw std::domain_error("nested_floor_check: arguments must be >= 1");
    return (m / j) / k == floor_div_prod(m, j, k);
}

namespace {

void require_mu_cover(const MoebiusBlock& mu, u64 need, const char* who) {
    if (mu.lo != 1 || mu.hi < need)
        throw std::invalid_argument(std::string(who) + ": mu block must cover [1, " +
                                    std::to_string(need) + "]");
}

}  // namespace

i64 meissel_sum(u64 m, const MoebiusBlock& mu) {
    if (m == 0) throw std::invalid_argument("meissel_sum: m must be >= 1");
    require_mu_cover(mu, m, "meissel_sum");
    i64 s = 0;
    const i8* v = mu.values.data();
    for (u64 k = 1; k <= m; ++k)
        if (v[k - 1]) s += static_cast<i64>(m / k) * v[k - 1];
    return s;
}

i64 meissel_sum(u64 m) { return meissel_sum(m, sieve_full(m)); }

i64 meissel_sum_blocked(u64 m, const MertensTable& table) {
    if (m == 0) throw std::invalid_argument("meissel_sum_blocked: m must be >= 1");
    if (table.n_max() < m)
        throw std::invalid_argument("meissel_sum_blocked: table must cover [1, m]");
    i64 s = 0;
    u64 k = 1;
    while (k <= m) {
        u64 q = m / k;
        u64 k2 = m / q;
        s += static_cast<i64>(q) * (table.prefix[k2] - table.prefix[k - 1]);
        k = k2 + 1;
    }
    return s;
}

i64 meissel_sum_scaled(u64 m, u64 j, const MoebiusBlock& mu) {
    if (m == 0 || j == 0)
        throw std::invalid_argument("meissel_sum_scaled: m and j must be >= 1");
    if (j > m)
        throw std::invalid_argument("meissel_sum_scaled: identity requires j <= m");
    u64 kmax = m / j;  // terms vanish beyond here
    require_mu_cover(mu, kmax, "meissel_sum_scaled");
    i64 s = 0;
    const i8* v = mu.values.data();
    for (u64 k = 1; k <= kmax; ++k)
        if (v[k - 1]) s += static_cast<i64>(m / (j * k)) * v[k - 1];
    return s;
}

i64 meissel_sum_scaled(u64 m, u64 j) {
    if (j == 0 || j > m)
        throw std::invalid_argument("meissel_sum_scaled: identity requires 1 <= j <= m");
    return meissel_sum_scaled(m, j, sieve_full(m / j));
}

i64 bracket_mu_sum(u64 m, u64 j, const MoebiusBlock& mu) {
    if (m == 0 || j == 0)
        throw std::invalid_argument("bracket_mu_sum: m and j must be >= 1");
    if (j > m)
        throw std::invalid_argument("bracket_mu_sum: identity requires j <= m");
    u64 kmax = m / j;
    require_mu_cover(mu, kmax, "bracket_mu_sum");
    i64 s = 0;
    const i8* v = mu.values.data();
    for (u64 k = 1; k <= kmax; ++k)
        if (v[k - 1])
            s += static_cast<i64>(m / (j * k) - 2 * floor_div_prod2(m, j, k)) * v[k - 1];
    return s;
}

i64 bracket_mu_sum(u64 m, u64 j) {
    if (j == 0 || j > m)
        throw std::invalid_argument("bracket_mu_sum: identity requires 1 <= j <= m");
    return bracket_mu_sum(m, j, sieve_full(m / j));
}

namespace {

// deterministic bounded draw; bias is irrelevant at these ranges
u64 draw(std::mt19937_64& rng, u64 lo, u64 hi) { return lo + rng() % (hi - lo + 1); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SweepResult sweep_meissel(const VerifyConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r{.name = "meissel"};
    auto table = mertens_table(cfg.meissel_max);
    for (u64 m = 1; m <= cfg.meissel_max; ++m) {
        ++r.cases;
        i64 s = meissel_sum_blocked(m, table);
        if (s != 1 && r.failures++ == 0)
            r.first_counterexample = "m=" + std::to_string(m) + " sum=" + std::to_string(s);
    }
    r.elapsed_s = seconds_since(t0);
    return r;
}

SweepResult sweep_scaled(const VerifyConfig& cfg, const MoebiusBlock& mu) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r{.name = "meissel-scaled"};
    auto check = [&](u64 m, u64 j) {
        ++r.cases;
        i64 s = meissel_sum_scaled(m, j, mu);
        if (s != 1 && r.failures++ == 0)
            r.first_counterexample =
                "m=" + std::to_string(m) + " j=" + std::to_string(j) + " sum=" + std::to_string(s);
    };
    for (u64 m = 1; m <= cfg.sum_m_max; ++m)
        for (u64 j = 1; j <= m; ++j) check(m, j);
    std::mt19937_64 rng(cfg.seed);
    for (u64 i = 0; i < cfg.random_cases; ++i) {
        u64 m = draw(rng, 1, cfg.random_m_max);
        check(m, draw(rng, 1, m));
    }
    r.elapsed_s = seconds_since(t0);
    return r;
}

SweepResult sweep_bracket_sign(const VerifyConfig& cfg, const MoebiusBlock& mu) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r{.name = "bracket-sum-sign"};
    auto check = [&](u64 m, u64 j) {
        ++r.cases;
        i64 s = bracket_mu_sum(m, j, mu);
        i64 want = (2 * j <= m) ? -1 : 1;
        if (s != want && r.failures++ == 0)
            r.first_counterexample = "m=" + std::to_string(m) + " j=" + std::to_string(j) +
                                     " sum=" + std::to_string(s) + " want=" + std::to_string(want);
    };
    for (u64 m = 1; m <= cfg.sum_m_max; ++m)
        for (u64 j = 1; j <= m; ++j) check(m, j);
    std::mt19937_64 rng(cfg.seed + 1);
    for (u64 i = 0; i < cfg.random_cases; ++i) {
        u64 m = draw(rng, 1, cfg.random_m_max);
        check(m, draw(rng, 1, m));
    }
    r.elapsed_s = seconds_since(t0);
    return r;
}

SweepResult sweep_nested(const VerifyConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r{.name = "nested-floor"};
    auto fail = [&](u64 m, u64 j, u64 k) {
        if (r.failures++ == 0)
            r.first_counterexample =
                "m=" + std::to_string(m) + " j=" + std::to_string(j) + " k=" + std::to_string(k);
    };
    for (u64 m = 1; m <= cfg.nested_max; ++m)
        for (u64 j = 1; j <= cfg.nested_max; ++j) {
            u64 t = m / j;
            for (u64 k = 1; k <= cfg.nested_max; ++k) {
                ++r.cases;
                u64 lhs = t / k;
                u64 rhs = (j * k > m) ? 0 : m / (j * k);
                if (lhs != rhs) fail(m, j, k);
            }
        }
    std::mt19937_64 rng(cfg.seed + 2);
    for (u64 i = 0; i < cfg.nested_random; ++i) {
        u64 m = rng(), j = rng(), k = rng();
        if (!m) m = 1;
        if (!j) j = 1;
        if (!k) k = 1;
        ++r.cases;
        if (!nested_floor_check(m, j, k)) fail(m, j, k);
    }
    r.elapsed_s = seconds_since(t0);
    return r;
}

SweepResult sweep_bracket_parity(const VerifyConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    SweepResult r{.name = "bracket-parity"};
    std::mt19937_64 rng(cfg.seed + 3);
    u64 per_m = cfg.bracket_budget / std::max<u64>(1, cfg.bracket_m_max);
    auto check = [&](u64 m, u64 j, u64 k) {
        ++r.cases;
        int v = bracket(m, j, k).value;
        int parity = static_cast<int>(floor_div_prod(m, j, k) & 1);
        if ((v != 0 && v != 1) || v != parity) {
            if (r.failures++ == 0)
                r.first_counterexample = "m=" + std::to_string(m) + " j=" + std::to_string(j) +
                                         " k=" + std::to_string(k) + " value=" + std::to_string(v);
        }
    };
    for (u64 m = 1; m <= cfg.bracket_m_max; ++m) {
        if (m * m <= per_m) {
            for (u64 j = 1; j <= m; ++j)
                for (u64 k = 1; k <= m; ++k) check(m, j, k);
        } else {
            for (u64 i = 0; i < per_m; ++i) check(m, draw(rng, 1, m), draw(rng, 1, m));
        }
    }
    r.elapsed_s = seconds_since(t0);
    return r;
}

}  // namespace

std::vector<SweepResult> verify_identities(const VerifyConfig& cfg) {
    u64 mu_need = std::max(cfg.sum_m_max, cfg.random_m_max);
    auto mu = sieve_full(std::max<u64>(1, mu_need));
    std::vector<SweepResult> out;
    out.push_back(sweep_meissel(cfg));
    out.push_back(sweep_scaled(cfg, mu));
    out.push_back(sweep_bracket_sign(cfg, mu));
    out.push_back(sweep_nested(cfg));
    out.push_back(sweep_bracket_parity(cfg));
    return out;
}

}  // namespace mert
