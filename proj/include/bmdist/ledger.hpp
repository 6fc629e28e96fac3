#pragma once

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "bmdist/bound_result.hpp"

namespace bmdist {

std::string iso8601_utc_now();

/// 64-bit FNV-1a digest, 16 hex characters.
std::string fnv1a_hex(std::string_view data);

/// Digest of a matrix's canonical serialization; empty-safe identifier for
/// CSV and run records.
std::string matrix_digest(const SquareMatrix& m);

nlohmann::json bound_result_to_json(const BoundResult& b);
BoundResult bound_result_from_json(const nlohmann::json& j);

/// One appended line per run. Records are self-contained: witnesses are
/// embedded in full so every claim can be re-verified offline.
struct RunRecord {
    std::string timestamp;
    std::string command;
    nlohmann::json parameters;  // p, n, seed, config_digest as applicable
    nlohmann::json result;
    std::string tool_version;
};

nlohmann::json run_record_to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

void append_run_record(const std::string& path, const RunRecord& r);
std::vector<RunRecord> read_run_records(const std::string& path);

/// Recomputes the record's claim from the embedded data: witness results are
/// re-evaluated through the gauge (1e-9 relative), formula results through
/// the bounds engine, certifications by re-running the certifier.
bool reverify_record(const RunRecord& r);

}  // namespace bmdist
