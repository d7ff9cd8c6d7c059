#include "mert/mertens.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <stdexcept>

namespace mert {

i64 MertensTable::at(u64 i) const {
    if (i >= prefix.size())
        throw std::out_of_range("MertensTable::at: " + std::to_string(i) +
                                " > n_max = " + std::to_string(n_max()));
    return prefix[i];
}

MertensTable mertens_table(u64 n, u64 memory_budget_bytes) {
    if (n == 0) throw std::invalid_argument("mertens_table: n must be >= 1");
    u64 estimated = (n + 1) * 8 + (u64(16) << 20);
    if (estimated > memory_budget_bytes)
        throw std::length_error(
            "mertens_table: n = " + std::to_string(n) + " needs about " +
            std::to_string(estimated >> 20) + " MiB (budget " +
            std::to_string(memory_budget_bytes >> 20) + " MiB)");

    MertensTable table;
    table.prefix.assign(n + 1, 0);
    auto primes = primes_up_to(isqrt(n));
    u64 len = std::min<u64>(kDefaultSegmentLen, n);
    std::vector<i8> mu(len);
    std::vector<u64> scratch(len);
    i64 acc = 0;
    for (u64 lo = 1; lo <= n; lo += len) {
        u64 hi = std::min(n, lo + len - 1);
        sieve_segment_into(lo, hi, primes, mu, scratch);
        for (u64 v = lo; v <= hi; ++v) {
            acc += mu[v - lo];
            table.prefix[v] = acc;
        }
    }
    return table;
}

namespace {

void validate_queries(std::span<const u64> queries) {
    for (size_t i = 0; i < queries.size(); ++i) {
        if (queries[i] == 0)
            throw std::invalid_argument("mertens_many: queries must be >= 1");
        if (i > 0 && queries[i] <= queries[i - 1])
            throw std::invalid_argument("mertens_many: queries must be strictly ascending");
    }
}

}  // namespace

std::vector<CheckpointRecord> mertens_many(std::span<const u64> queries,
                                           const StreamConfig& cfg) {
    validate_queries(queries);
    if (cfg.segment_len == 0)
        throw std::invalid_argument("mertens_many: segment_len must be >= 1");

    std::vector<CheckpointRecord> results;
    if (queries.empty()) return results;
    results.reserve(queries.size());

    u64 start = 1;
    i64 acc = 0;
    size_t qi = 0;
    if (cfg.resume) {
        const auto& base = *cfg.resume;
        if (static_cast<u64>(base.m < 0 ? -base.m : base.m) > base.x)
            throw std::invalid_argument("mertens_many: resume record violates |M(x)| <= x");
        if (queries.front() < base.x)
            throw std::invalid_argument("mertens_many: query below resume point");
        start = base.x + 1;
        acc = base.m;
        if (queries[qi] == base.x) {
            results.push_back({base.x, base.m});
            ++qi;
        }
    }
    if (qi == queries.size()) return results;

    u64 last = queries.back();
    auto primes = primes_up_to(isqrt(last));
    u64 len = std::min(cfg.segment_len, last - start + 1);
    unsigned slots = std::max(1u, cfg.threads);

    std::vector<std::vector<i8>> mu(slots, std::vector<i8>(len));
    std::vector<std::vector<u64>> scratch(slots, std::vector<u64>(len));

    u64 cur = start;
    while (cur <= last && qi < queries.size()) {
        // one round: sieve up to `slots` segments ahead, then fold in order
        unsigned active = 0;
        std::vector<std::pair<u64, u64>> seg;
        for (unsigned t = 0; t < slots && cur <= last; ++t) {
            u64 hi = std::min(last, cur + len - 1);
            seg.emplace_back(cur, hi);
            cur = hi + 1;
            ++active;
        }
        std::vector<std::future<void>> futs;
        for (unsigned t = 1; t < active; ++t)
            futs.push_back(std::async(std::launch::async, [&, t] {
                sieve_segment_into(seg[t].first, seg[t].second, primes, mu[t], scratch[t]);
            }));
        if (active > 0)
            sieve_segment_into(seg[0].first, seg[0].second, primes, mu[0], scratch[0]);
        for (auto& f : futs) f.get();

        for (unsigned t = 0; t < active; ++t) {
            auto [lo, hi] = seg[t];
            const i8* buf = mu[t].data();
            for (u64 v = lo; v <= hi; ++v) {
                acc += buf[v - lo];
                if (qi < queries.size() && v == queries[qi]) {
                    results.push_back({v, acc});
                    ++qi;
                }
            }
            if (cfg.progress) cfg.progress(hi);
            if (qi == queries.size()) break;
        }
    }
    return results;
}

DifferenceSample difference(u64 x, const StreamConfig& cfg) {
    if (x == 0) throw std::domain_error("difference: x must be >= 1");
    u64 half = x / 2;
    std::vector<u64> queries;
    if (half >= 1) queries.push_back(half);
    queries.push_back(x);
    auto recs = mertens_many(queries, cfg);

    DifferenceSample s;
    s.x = x;
    s.m_half = (half >= 1) ? recs.front().m : 0;  // M(0) = 0
    s.m_x = recs.back().m;
    s.d = s.m_x - 2 * s.m_half;
    return s;
}

std::string checkpoint_serialize(std::span<const CheckpointRecord> records) {
    std::string out;
    u64 prev_x = 0;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (i > 0 && r.x <= prev_x)
            throw std::invalid_argument("checkpoint records must be strictly ascending in x");
        if (static_cast<u64>(r.m < 0 ? -r.m : r.m) > r.x)
            throw std::invalid_argument("checkpoint record violates |M(x)| <= x");
        prev_x = r.x;
        out += std::to_string(r.x);
        out += '\t';
        out += std::to_string(r.m);
        out += '\n';
    }
    return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, size_t line, const char* what) {
    throw std::runtime_error(origin + ": line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<CheckpointRecord> checkpoint_parse(std::string_view text,
                                               const std::string& origin) {
    std::vector<CheckpointRecord> records;
    size_t pos = 0, line_no = 0;
    u64 prev_x = 0;
    while (pos < text.size()) {
        ++line_no;
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) parse_fail(origin, line_no, "missing newline");
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;

        size_t tab = line.find('\t');
        if (tab == std::string_view::npos) parse_fail(origin, line_no, "expected x<TAB>m");
        std::string_view xs = line.substr(0, tab);
        std::string_view ms = line.substr(tab + 1);

        CheckpointRecord rec;
        auto xr = std::from_chars(xs.data(), xs.data() + xs.size(), rec.x);
        if (xr.ec != std::errc{} || xr.ptr != xs.data() + xs.size())
            parse_fail(origin, line_no, "bad x field");
        auto mr = std::from_chars(ms.data(), ms.data() + ms.size(), rec.m);
        if (mr.ec != std::errc{} || mr.ptr != ms.data() + ms.size())
            parse_fail(origin, line_no, "bad m field");

        if (!records.empty() && rec.x <= prev_x)
            parse_fail(origin, line_no, "x not strictly ascending");
        if (static_cast<u64>(rec.m < 0 ? -rec.m : rec.m) > rec.x)
            parse_fail(origin, line_no, "|M(x)| <= x violated");
        prev_x = rec.x;
        records.push_back(rec);
    }
    return records;
}

void checkpoint_write(std::span<const CheckpointRecord> records, const std::string& path) {
    std::string body = checkpoint_serialize(records);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint_write: cannot open " + path);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) throw std::runtime_error("checkpoint_write: write failed for " + path);
}

std::vector<CheckpointRecord> checkpoint_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint_read: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return checkpoint_parse(text, path);
}

std::optional<CheckpointRecord> best_resume(std::span<const CheckpointRecord> records,
                                            u64 target) {
    std::optional<CheckpointRecord> best;
    for (const auto& r : records) {
        if (r.x > target) break;
        best = r;
    }
    return best;
}

}  // namespace mert
