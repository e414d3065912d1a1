#pragma once

// Text and JSON serialization of check reports, solver traces, oracle results
// and corpus regressions. JSON documents use sorted keys and shortest
// round-trip numbers, so equal inputs give byte-identical output.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "proxima/checkers.hpp"
#include "proxima/corpus.hpp"
#include "proxima/oracle.hpp"
#include "proxima/proximity.hpp"
#include "proxima/solver.hpp"

namespace proxima::report {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

json point_json(const Point& p);

json to_json(const CheckReport& r);
json to_json(const AxiomReport& r);
json to_json(const IterationTrace& t);  // summary only, no per-step rows
json to_json(const OracleResult& r);
json to_json(const AgreementReport& r);
json to_json(const RegressionSummary& s);
json to_json(const std::vector<RangeWarning>& warnings);

/// Top-level document: {"schema_version", "kind", "instance", ...body}.
json document(std::string kind, const std::string& instance, json body);

std::string dump(const json& j);  // two-space indent plus trailing newline

std::string to_text(const CheckReport& r);
std::string to_text(const IterationTrace& t);
std::string to_text(const OracleResult& r);
std::string to_text(const AgreementReport& r);
std::string to_text(const RegressionSummary& s);
// At most `limit` lines, followed by a count of the omitted warnings.
std::string to_text(const std::vector<RangeWarning>& warnings, std::size_t limit = SIZE_MAX);

/// Columns n, x1..xk, step_gap, feasibility_error. Row 0 has empty gaps.
std::string trace_csv(const IterationTrace& t);

}  // namespace proxima::report
