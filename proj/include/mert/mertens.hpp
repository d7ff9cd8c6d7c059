#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mert/moebius.hpp"

namespace mert {

// Exact prefix sums M(0..n_max), M(0) = 0.
struct MertensTable {
    std::vector<i64> prefix;

    u64 n_max() const { return prefix.empty() ? 0 : prefix.size() - 1; }
    i64 at(u64 i) const;
};

// One persisted (x, M(x)) pair.
struct CheckpointRecord {
    u64 x = 0;
    i64 m = 0;

    bool operator==(const CheckpointRecord&) const = default;
};

// x, M(x), M(floor(x/2)) and the difference M(x) - 2*M(floor(x/2)).
struct DifferenceSample {
    u64 x = 0;
    i64 m_x = 0;
    i64 m_half = 0;
    i64 d = 0;
};

// Controls for the streaming pass behind mertens_many.
struct StreamConfig {
    u64 segment_len = kDefaultSegmentLen;
    unsigned threads = 1;                    // segments sieved ahead concurrently
    std::optional<CheckpointRecord> resume;  // continue accumulation from (x, M(x))
    std::function<void(u64)> progress;       // called with x after each segment
};

// M(1..n) built by streaming segments; throws std::length_error over budget.
MertensTable mertens_table(u64 n, u64 memory_budget_bytes = kDefaultMemoryBudget);

// One left-to-right pass answering every query exactly. Queries must be
// strictly ascending and >= 1; with cfg.resume set, no query may lie below
// the resume point.
std::vector<CheckpointRecord> mertens_many(std::span<const u64> queries,
                                           const StreamConfig& cfg = {});

// M(x), M(floor(x/2)) and their difference in a single pass.
DifferenceSample difference(u64 x, const StreamConfig& cfg = {});

// Checkpoint file format: one "x<TAB>M(x)\n" line per record, ASCII decimal,
// strictly ascending in x, no header, no trailing whitespace.
std::string checkpoint_serialize(std::span<const CheckpointRecord> records);
std::vector<CheckpointRecord> checkpoint_parse(std::string_view text,
                                               const std::string& origin = "<memory>");
void checkpoint_write(std::span<const CheckpointRecord> records, const std::string& path);
std::vector<CheckpointRecord> checkpoint_read(const std::string& path);

// Largest record with x <= target, if any (records ascending).
std::optional<CheckpointRecord> best_resume(std::span<const CheckpointRecord> records,
                                            u64 target);

}  // namespace mert
