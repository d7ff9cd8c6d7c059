#include "doctest.h"
#include "mert/cli.hpp"
#include "mert/emit.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mert;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) {
        path = (std::filesystem::temp_directory_path() / name).string();
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_fixed6") {
    CHECK(format_fixed6(0.0) == "0.000000");
    CHECK(format_fixed6(1.5) == "1.500000");
    CHECK(format_fixed6(0.6309297535714574) == "0.630930");
    CHECK(format_fixed6(-0.25) == "-0.250000");
}

TEST_CASE("scan record emission, exact bytes") {
    std::vector<ScanRecord> recs;
    CHECK(emit_csv(std::span<const ScanRecord>(recs)) == "n,magnitude,exponent,running_sup\n");
    CHECK(emit_json(std::span<const ScanRecord>(recs)) == "[]");

    recs.push_back({3, 2, 0.630930, 0.630930});
    CHECK(emit_csv(std::span<const ScanRecord>(recs)) ==
          "n,magnitude,exponent,running_sup\n3,2,0.630930,0.630930\n");
    CHECK(emit_json(std::span<const ScanRecord>(recs)) ==
          "[{\"n\":3,\"magnitude\":2,\"exponent\":0.630930,\"running_sup\":0.630930}]");

    recs.clear();
    recs.push_back({1, 0, std::nullopt, 0.0});
    CHECK(emit_csv(std::span<const ScanRecord>(recs)) ==
          "n,magnitude,exponent,running_sup\n1,0,,0.000000\n");
    CHECK(emit_json(std::span<const ScanRecord>(recs)) ==
          "[{\"n\":1,\"magnitude\":0,\"exponent\":null,\"running_sup\":0.000000}]");
}

TEST_CASE("checkpoint and double-sum emission") {
    const std::vector<CheckpointRecord> cps{{10, -1}, {100, 1}};
    CHECK(emit_csv(std::span<const CheckpointRecord>(cps)) == "x,m\n10,-1\n100,1\n");
    CHECK(emit_json(std::span<const CheckpointRecord>(cps)) ==
          "[{\"x\":10,\"m\":-1},{\"x\":100,\"m\":1}]");

    const std::vector<DoubleSumResult> ds{
        {3, 2, Method::naive, 0.25, 0}, {3, 2, Method::blocked, 0.5, 7}};
    CHECK(emit_csv(std::span<const DoubleSumResult>(ds)) == "n,s,method\n3,2,naive\n3,2,blocked\n");
    CHECK(emit_json(std::span<const DoubleSumResult>(ds)) ==
          "[{\"n\":3,\"s\":2,\"method\":\"naive\"},{\"n\":3,\"s\":2,\"method\":\"blocked\"}]");
}

TEST_CASE("cli doublesum") {
    TempFile out("mert_cli_ds.csv");
    CHECK(run({"doublesum", "--n", "3", "--method", "naive", "--output", out.path}) == 0);
    CHECK(slurp(out.path) == "n,s,method\n3,2,naive\n");

    CHECK(run({"doublesum", "--n", "9", "--method", "blocked", "--output", out.path}) == 0);
    CHECK(slurp(out.path) == "n,s,method\n9,8,blocked\n");

    // auto picks naive at n <= 64 and blocked above
    CHECK(run({"doublesum", "--n", "64", "--n", "65", "--output", out.path}) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("64,") != std::string::npos);
    CHECK(text.find(",naive\n") != std::string::npos);
    CHECK(text.find("65,") != std::string::npos);
    CHECK(text.find(",blocked\n") != std::string::npos);

    CHECK(run({"doublesum", "--n", "150", "--check", "--output", out.path}) == 0);
    const std::string chk = slurp(out.path);
    CHECK(chk.find("naive") != std::string::npos);
    CHECK(chk.find("blocked") != std::string::npos);

    TempFile js("mert_cli_ds.json");
    CHECK(run({"doublesum", "--n", "3", "--method", "naive", "--format", "json",
               "--output", js.path}) == 0);
    CHECK(slurp(js.path) == "[{\"n\":3,\"s\":2,\"method\":\"naive\"}]\n");
}

TEST_CASE("cli scan-s") {
    TempFile out("mert_cli_ss.csv");
    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "2", "--output", out.path}) == 0);
    CHECK(slurp(out.path) == "n,magnitude,exponent,running_sup\n2,1,0.000000,0.000000\n");

    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "3", "--output", out.path}) == 0);
    CHECK(slurp(out.path) ==
          "n,magnitude,exponent,running_sup\n"
          "2,1,0.000000,0.000000\n"
          "3,2,0.630930,0.630930\n");
}

TEST_CASE("cli scan-s determinism across thread counts") {
    TempFile a("mert_cli_t1.csv"), b("mert_cli_t4.csv");
    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "120", "--threads", "1",
               "--output", a.path}) == 0);
    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "120", "--threads", "4",
               "--output", b.path}) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("cli mertens with checkpoint writing") {
    TempFile out("mert_cli_m.csv"), ckpt("mert_cli_m.tsv");
    CHECK(run({"mertens", "--points", "10,100,1000", "--checkpoint", ckpt.path,
               "--output", out.path}) == 0);
    CHECK(slurp(out.path) == "x,m\n10,-1\n100,1\n1000,2\n");
    CHECK(slurp(ckpt.path) == "10\t-1\n100\t1\n1000\t2\n");

    // answering from the checkpoint must reproduce the same rows
    TempFile out2("mert_cli_m2.csv");
    CHECK(run({"mertens", "--points", "10,100,1000,10000", "--resume-from", ckpt.path,
               "--output", out2.path}) == 0);
    CHECK(slurp(out2.path) == "x,m\n10,-1\n100,1\n1000,2\n10000,-23\n");
}

TEST_CASE("cli scan-d and resume") {
    TempFile out("mert_cli_sd.csv");
    CHECK(run({"scan-d", "--points", "4,10", "--output", out.path}) == 0);
    CHECK(slurp(out.path) ==
          "n,magnitude,exponent,running_sup\n"
          "4,-1,0.000000,0.000000\n"
          "10,3,0.477121,0.477121\n");

    // a fresh full scan and a two-step resumed scan must emit identical rows
    TempFile full("mert_cli_full.csv"), part("mert_cli_part.csv"), ck("mert_cli_sd.tsv");
    CHECK(run({"scan-d", "--x-max", "20000", "--per-decade", "6", "--output", full.path}) == 0);
    CHECK(run({"scan-d", "--x-max", "500", "--per-decade", "6", "--checkpoint", ck.path,
               "--output", part.path}) == 0);
    CHECK(run({"resume", "--checkpoint", ck.path, "--x-max", "20000", "--per-decade", "6",
               "--output", part.path}) == 0);
    CHECK(slurp(full.path) == slurp(part.path));

    // the updated checkpoint file now covers the larger grid, whose top
    // point is floor(10^(25/6)) = 14677
    const std::string ck_text = slurp(ck.path);
    CHECK(ck_text.find("14677\t") != std::string::npos);
}

TEST_CASE("cli verify") {
    CHECK(run({"verify", "--m-max", "40", "--meissel-max", "1500", "--nested-max", "30",
               "--bracket-m-max", "60", "--bracket-budget", "50000", "--random", "30",
               "--random-m-max", "500"}) == 0);
}

TEST_CASE("cli usage and io errors") {
    CHECK(run({"bogus-subcommand"}) == kExitUsage);
    CHECK(run({"doublesum"}) == kExitUsage);                       // missing --n
    CHECK(run({"doublesum", "--n", "0"}) == kExitUsage);           // invalid n
    CHECK(run({"scan-s", "--n-min", "1", "--n-max", "5"}) == kExitUsage);
    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "5", "--format", "xml"}) == kExitUsage);
    CHECK(run({"scan-d"}) == kExitUsage);                          // no points, no x-max
    CHECK(run({"scan-d", "--points", "5,4"}) == kExitUsage);       // not ascending
    CHECK(run({"mertens", "--points", "10", "--output",
               "/nonexistent-dir/out.csv"}) == kExitIo);
    CHECK(run({"resume", "--checkpoint", "/nonexistent-dir/c.tsv", "--x-max", "100"}) ==
          kExitIo);
    CHECK(run({"scan-s", "--n-min", "2", "--n-max", "5", "--threads", "0"}) == kExitUsage);
}

TEST_CASE("corrupt checkpoint files are an I/O failure") {
    TempFile ck("mert_cli_bad.tsv");
    std::ofstream(ck.path) << "10\t-1\n5\t9\n";
    CHECK(run({"resume", "--checkpoint", ck.path, "--x-max", "100"}) == kExitIo);
}

TEST_CASE("default_threads honors the environment variable") {
    const char* old = std::getenv("MERTENS_THREADS");
    const std::string saved = old ? old : "";
    setenv("MERTENS_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    setenv("MERTENS_THREADS", "junk", 1);
    CHECK(default_threads() >= 1);
    if (old)
        setenv("MERTENS_THREADS", saved.c_str(), 1);
    else
        unsetenv("MERTENS_THREADS");
}

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}) == 0);
    CHECK(run({"doublesum", "--help"}) == 0);
}
