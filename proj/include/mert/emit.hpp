#pragma once

#include <string>

#include "mert/criterion.hpp"

namespace mert {

// All emitters are byte-deterministic for a given input: fixed key order,
// floats at 6 decimals, no locale involvement.  Timing fields never appear
// in data output.
std::string format_fixed6(double v);

std::string emit_csv(std::span<const ScanRecord> recs);
std::string emit_json(std::span<const ScanRecord> recs);

std::string emit_csv(std::span<const CheckpointRecord> recs);
std::string emit_json(std::span<const CheckpointRecord> recs);

std::string emit_csv(std::span<const DoubleSumResult> recs);
std::string emit_json(std::span<const DoubleSumResult> recs);

}  // namespace mert
