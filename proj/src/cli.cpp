#include "mert/cli.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <thread>

#include "CLI11.hpp"
#include "mert/emit.hpp"
#include "mert/identities.hpp"

namespace mert {
namespace {

struct CommonOpts {
    std::string format = "csv";
    std::string output;            // empty = standard output
    std::string threads = "auto";
    u64 segment_len = kDefaultSegmentLen;
};

unsigned resolve_threads(const std::string& s) {
    if (s == "auto") return default_threads();
    const unsigned long v = std::strtoul(s.c_str(), nullptr, 10);
    if (v == 0 || v > 4096)
        throw CLI::ValidationError("--threads", "expected a positive integer or 'auto'");
    return static_cast<unsigned>(v);
}

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("-o,--output", c.output, "write data output to this file instead of stdout");
    sub->add_option("--threads", c.threads, "worker threads, or 'auto'")
        ->capture_default_str();
    sub->add_option("--segment-len", c.segment_len, "sieve segment length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

// Data output goes to one stream, whole and ordered; JSON gets a final newline.
int write_output(const std::string& text, const CommonOpts& c) {
    std::string payload = text;
    if (c.format == "json") payload += '\n';
    if (c.output.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        std::fflush(stdout);
        if (std::ferror(stdout)) {
            std::fprintf(stderr, "error: failed writing standard output\n");
            return kExitIo;
        }
        return kExitOk;
    }
    std::FILE* f = std::fopen(c.output.c_str(), "wb");
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s for writing\n", c.output.c_str());
        return kExitIo;
    }
    const size_t wrote = std::fwrite(payload.data(), 1, payload.size(), f);
    const bool ok = wrote == payload.size() && std::fclose(f) == 0;
    if (!ok) {
        std::fprintf(stderr, "error: failed writing %s\n", c.output.c_str());
        return kExitIo;
    }
    return kExitOk;
}

template <class Rec>
std::string render(const std::vector<Rec>& recs, const CommonOpts& c) {
    return c.format == "json" ? emit_json(std::span<const Rec>(recs))
                              : emit_csv(std::span<const Rec>(recs));
}

// Rate line on stderr, only when attached to a terminal so captured output
// stays clean.
std::function<void(u64)> make_rate_line() {
    if (!isatty(2)) return {};
    struct State {
        std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
        std::chrono::steady_clock::time_point last = t0;
    };
    auto st = std::make_shared<State>();
    return [st](u64 x) {
        const auto now = std::chrono::steady_clock::now();
        if (now - st->last < std::chrono::milliseconds(500)) return;
        st->last = now;
        const double dt = std::chrono::duration<double>(now - st->t0).count();
        std::fprintf(stderr, "\rsieve: x=%llu (%.1fM/s)   ",
                     static_cast<unsigned long long>(x),
                     dt > 0 ? static_cast<double>(x) / dt / 1e6 : 0.0);
    };
}

void finish_rate_line(const std::function<void(u64)>& fn) {
    if (fn) std::fprintf(stderr, "\n");
}

StreamConfig stream_config(const CommonOpts& c) {
    StreamConfig cfg;
    cfg.segment_len = c.segment_len;
    cfg.threads = resolve_threads(c.threads);
    cfg.progress = make_rate_line();
    return cfg;
}

// Answer Mertens queries, serving from known checkpoints where possible and
// streaming the rest in one resumed pass.  Returns the union of old and new
// values, keyed by x.
std::map<u64, i64> answer_points(const std::vector<u64>& pts,
                                 std::span<const CheckpointRecord> known,
                                 const StreamConfig& cfg) {
    std::map<u64, i64> have;
    for (const auto& r : known) have[r.x] = r.m;
    std::vector<u64> missing;
    for (u64 x : pts)
        if (!have.count(x)) missing.push_back(x);
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    if (!missing.empty()) {
        StreamConfig pass = cfg;
        pass.resume = best_resume(known, missing.front());
        for (const CheckpointRecord& r : mertens_many(missing, pass)) have[r.x] = r.m;
    }
    return have;
}

std::vector<CheckpointRecord> to_records(const std::map<u64, i64>& have) {
    std::vector<CheckpointRecord> out;
    out.reserve(have.size());
    for (const auto& [x, m] : have) out.push_back({x, m});
    return out;
}

int cmd_verify(const VerifyConfig& vc) {
    const std::vector<SweepResult> results = verify_identities(vc);
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("%-18s cases=%-12llu failures=%-8llu %s\n", r.name.c_str(),
                    static_cast<unsigned long long>(r.cases),
                    static_cast<unsigned long long>(r.failures),
                    r.ok() ? "ok" : "FAIL");
        if (!r.ok()) {
            all_ok = false;
            std::printf("  first counterexample: %s\n", r.first_counterexample.c_str());
        }
    }
    std::printf(all_ok ? "all identity suites passed\n"
                       : "identity suite FAILED\n");
    std::fflush(stdout);
    return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

unsigned default_threads() {
    if (const char* env = std::getenv("MERTENS_THREADS")) {
        const unsigned long v = std::strtoul(env, nullptr, 10);
        if (v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw >= 1 ? hw : 1;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Möbius / Mertens toolkit: identity verification, streamed "
                 "Mertens values, bracketed double sums, growth-criterion scans"};
    app.require_subcommand(1);
    CommonOpts common;

    // verify
    VerifyConfig vc;
    auto* verify = app.add_subcommand("verify", "run the exhaustive and randomized identity sweeps");
    verify->add_option("--m-max", vc.sum_m_max, "exhaustive bound for the scaled and signed sums")
        ->capture_default_str();
    verify->add_option("--meissel-max", vc.meissel_max, "upper bound for the Meissel sweep")
        ->capture_default_str();
    verify->add_option("--nested-max", vc.nested_max, "cube side for the nested-floor sweep")
        ->capture_default_str();
    verify->add_option("--bracket-m-max", vc.bracket_m_max, "m bound for the bracket parity sweep")
        ->capture_default_str();
    verify->add_option("--bracket-budget", vc.bracket_budget, "max triples in the bracket parity sweep")
        ->capture_default_str();
    verify->add_option("--random", vc.random_cases, "random cases per randomized suite")
        ->capture_default_str();
    verify->add_option("--random-m-max", vc.random_m_max, "m bound for random cases")
        ->capture_default_str();
    verify->add_option("--seed", vc.seed, "base seed for the randomized suites")
        ->capture_default_str();

    // mertens
    std::vector<u64> m_points;
    std::string m_checkpoint, m_resume_from;
    auto* mertens = app.add_subcommand("mertens", "Mertens values at explicit points");
    mertens->add_option("--points", m_points, "comma-separated evaluation points")
        ->required()
        ->delimiter(',');
    mertens->add_option("--checkpoint", m_checkpoint, "write all known values to this checkpoint file");
    mertens->add_option("--resume-from", m_resume_from, "seed from this checkpoint file");
    add_common(mertens, common);

    // doublesum
    std::vector<u64> d_ns;
    std::string d_method = "auto";
    bool d_check = false;
    auto* doublesum = app.add_subcommand("doublesum", "evaluate the bracketed double sum S(n)");
    doublesum->add_option("--n", d_ns, "evaluation point, repeatable")->required();
    doublesum->add_option("--method", d_method, "naive, blocked, or auto (naive for n <= 64)")
        ->check(CLI::IsMember({"naive", "blocked", "auto"}))
        ->capture_default_str();
    doublesum->add_flag("--check", d_check, "run both methods and compare");
    add_common(doublesum, common);

    // scan-s
    u64 s_n_min = 0, s_n_max = 0, s_stride = 1;
    auto* scan_s = app.add_subcommand("scan-s", "growth scan of S(n) over an arithmetic progression");
    scan_s->add_option("--n-min", s_n_min, "first n (>= 2)")->required();
    scan_s->add_option("--n-max", s_n_max, "last n")->required();
    scan_s->add_option("--stride", s_stride, "step between points")->capture_default_str();
    add_common(scan_s, common);

    // scan-d
    std::vector<u64> g_points;
    u64 g_x_max = 0;
    unsigned g_per_decade = 12;
    std::string g_checkpoint, g_resume_from;
    auto* scan_d = app.add_subcommand("scan-d", "growth scan of D(x) = M(x) - 2M(x/2)");
    auto* opt_pts = scan_d->add_option("--points", g_points, "explicit ascending points")
                        ->delimiter(',');
    auto* opt_xmax = scan_d->add_option("--x-max", g_x_max, "geometric grid up to this bound");
    scan_d->add_option("--per-decade", g_per_decade, "grid points per decade")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    opt_pts->excludes(opt_xmax);
    scan_d->add_option("--checkpoint", g_checkpoint, "write merged Mertens checkpoints here");
    scan_d->add_option("--resume-from", g_resume_from, "seed from this checkpoint file");
    add_common(scan_d, common);

    // resume
    std::string r_checkpoint;
    u64 r_x_max = 0;
    unsigned r_per_decade = 12;
    auto* resume = app.add_subcommand("resume", "extend a difference scan, updating its checkpoint file");
    resume->add_option("--checkpoint", r_checkpoint, "checkpoint file to read and update")
        ->required();
    resume->add_option("--x-max", r_x_max, "extend the geometric grid up to this bound")
        ->required();
    resume->add_option("--per-decade", r_per_decade, "grid points per decade")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(resume, common);

    try {
        app.parse(argc, argv);

        if (verify->parsed()) return cmd_verify(vc);

        if (mertens->parsed()) {
            StreamConfig cfg = stream_config(common);
            std::vector<CheckpointRecord> known;
            if (!m_resume_from.empty()) known = checkpoint_read(m_resume_from);
            const auto have = answer_points(m_points, known, cfg);
            finish_rate_line(cfg.progress);
            std::vector<CheckpointRecord> rows;
            for (u64 x : m_points) rows.push_back({x, have.at(x)});
            const int rc = write_output(render(rows, common), common);
            if (rc != kExitOk) return rc;
            if (!m_checkpoint.empty()) checkpoint_write(to_records(have), m_checkpoint);
            return kExitOk;
        }

        if (doublesum->parsed()) {
            const unsigned threads = resolve_threads(common.threads);
            std::vector<DoubleSumResult> rows;
            bool mismatch = false;
            u64 blocked_top = 0;
            for (u64 n : d_ns) {
                const bool naive = d_method == "naive" || (d_method == "auto" && n <= 64);
                if (d_check || !naive) blocked_top = std::max(blocked_top, n);
            }
            std::optional<MertensTable> table;
            if (blocked_top > 0) table = mertens_table(blocked_top);
            for (u64 n : d_ns) {
                const bool naive = d_method == "naive" || (d_method == "auto" && n <= 64);
                if (d_check) {
                    const DoubleSumResult a = double_sum_naive(n);
                    const DoubleSumResult b = double_sum_blocked(n, *table, threads);
                    rows.push_back(a);
                    rows.push_back(b);
                    std::fprintf(stderr, "doublesum: n=%llu naive=%.3fs blocked=%.3fs\n",
                                 static_cast<unsigned long long>(n), a.elapsed_s, b.elapsed_s);
                    if (a.s != b.s) {
                        mismatch = true;
                        std::fprintf(stderr, "error: method mismatch at n=%llu: naive=%lld blocked=%lld\n",
                                     static_cast<unsigned long long>(n),
                                     static_cast<long long>(a.s), static_cast<long long>(b.s));
                    }
                } else {
                    const DoubleSumResult r = naive ? double_sum_naive(n)
                                                    : double_sum_blocked(n, *table, threads);
                    rows.push_back(r);
                    std::fprintf(stderr, "doublesum: n=%llu method=%s elapsed=%.3fs\n",
                                 static_cast<unsigned long long>(n), method_name(r.method),
                                 r.elapsed_s);
                }
            }
            const int rc = write_output(render(rows, common), common);
            if (rc != kExitOk) return rc;
            return mismatch ? kExitCheckFailed : kExitOk;
        }

        if (scan_s->parsed()) {
            const auto recs =
                scan_double_sum(s_n_min, s_n_max, s_stride, resolve_threads(common.threads));
            return write_output(render(recs, common), common);
        }

        if (scan_d->parsed()) {
            if (g_points.empty() && g_x_max == 0)
                throw CLI::RequiredError("scan-d: one of --points or --x-max");
            StreamConfig cfg = stream_config(common);
            std::vector<CheckpointRecord> known;
            if (!g_resume_from.empty()) known = checkpoint_read(g_resume_from);
            const std::vector<u64> pts =
                g_points.empty() ? geometric_grid(g_x_max, g_per_decade) : g_points;
            const DifferenceScan scan = scan_difference_checkpointed(pts, known, cfg);
            finish_rate_line(cfg.progress);
            const int rc = write_output(render(scan.records, common), common);
            if (rc != kExitOk) return rc;
            if (!g_checkpoint.empty()) checkpoint_write(scan.checkpoints, g_checkpoint);
            return kExitOk;
        }

        if (resume->parsed()) {
            StreamConfig cfg = stream_config(common);
            const std::vector<CheckpointRecord> known = checkpoint_read(r_checkpoint);
            const std::vector<u64> pts = geometric_grid(r_x_max, r_per_decade);
            const DifferenceScan scan = scan_difference_checkpointed(pts, known, cfg);
            finish_rate_line(cfg.progress);
            const int rc = write_output(render(scan.records, common), common);
            if (rc != kExitOk) return rc;
            checkpoint_write(scan.checkpoints, r_checkpoint);
            return kExitOk;
        }

        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCheckFailed;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("mertens");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mert
