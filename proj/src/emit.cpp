#include "mert/emit.hpp"

#include <cinttypes>
#include <cstdio>

namespace mert {
namespace {

void append_u64(std::string& out, u64 v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRIu64, v);
    out += buf;
}

void append_i64(std::string& out, i64 v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRId64, v);
    out += buf;
}

}  // namespace

std::string format_fixed6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string emit_csv(std::span<const ScanRecord> recs) {
    std::string out = "n,magnitude,exponent,running_sup\n";
    for (const auto& r : recs) {
        append_u64(out, r.n);
        out += ',';
        append_i64(out, r.magnitude);
        out += ',';
        if (r.exponent) out += format_fixed6(*r.exponent);
        out += ',';
        out += format_fixed6(r.running_sup);
        out += '\n';
    }
    return out;
}

std::string emit_json(std::span<const ScanRecord> recs) {
    std::string out = "[";
    bool first = true;
    for (const auto& r : recs) {
        if (!first) out += ',';
        first = false;
        out += "{\"n\":";
        append_u64(out, r.n);
        out += ",\"magnitude\":";
        append_i64(out, r.magnitude);
        out += ",\"exponent\":";
        out += r.exponent ? format_fixed6(*r.exponent) : "null";
        out += ",\"running_sup\":";
        out += format_fixed6(r.running_sup);
        out += '}';
    }
    out += ']';
    return out;
}

std::string emit_csv(std::span<const CheckpointRecord> recs) {
    std::string out = "x,m\n";
    for (const auto& r : recs) {
        append_u64(out, r.x);
        out += ',';
        append_i64(out, r.m);
        out += '\n';
    }
    return out;
}

std::string emit_json(std::span<const CheckpointRecord> recs) {
    std::string out = "[";
    bool first = true;
    for (const auto& r : recs) {
        if (!first) out += ',';
        first = false;
        out += "{\"x\":";
        append_u64(out, r.x);
        out += ",\"m\":";
        append_i64(out, r.m);
        out += '}';
    }
    out += ']';
    return out;
}

std::string emit_csv(std::span<const DoubleSumResult> recs) {
    std::string out = "n,s,method\n";
    for (const auto& r : recs) {
        append_u64(out, r.n);
        out += ',';
        append_i64(out, r.s);
        out += ',';
        out += method_name(r.method);
        out += '\n';
    }
    return out;
}

std::string emit_json(std::span<const DoubleSumResult> recs) {
    std::string out = "[";
    bool first = true;
    for (const auto& r : recs) {
        if (!first) out += ',';
        first = false;
        out += "{\"n\":";
        append_u64(out, r.n);
        out += ",\"s\":";
        append_i64(out, r.s);
        out += ",\"method\":\"";
        out += method_name(r.method);
        out += "\"}";
    }
    out += ']';
    return out;
}

}  // namespace mert
