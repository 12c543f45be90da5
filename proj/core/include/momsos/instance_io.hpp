#pragma once

#include <optional>
#include <string>

#include "momsos/brute_force.hpp"
#include "momsos/hierarchy.hpp"
#include "momsos/instance.hpp"

namespace momsos {

/// Parses an instance from JSON text. Schema (unknown fields are rejected):
///
///   {
///     "dimension": 2,                       // required, integer >= 1
///     "radius": 1.0,                        // required, finite > 0
///     "objective": [ {"exps": [3,0], "coef": 0.5}, ... ],   // required
///     "constraints": [ [ {"exps": [0,0], "coef": 1.0}, ... ], ... ],
///     "name": "...",                        // optional
///     "expected_value": -0.25,              // optional
///     "expected_minimizer": [ -1.0, 0.0 ]   // optional, length = dimension
///   }
///
/// Every exps list must have exactly `dimension` nonnegative integer
/// entries. Throws std::invalid_argument naming the offending field and
/// term on any violation.
Instance parse_instance(const std::string& text);

/// Reads `path` and parses it. Throws std::runtime_error when the file
/// cannot be read, std::invalid_argument on schema violations.
Instance load_instance(const std::string& path);

/// Serializes the schema fields above (terms in graded-lex order, shortest
/// round-trip number formatting). For a non-preprocessed instance the
/// round trip parse_instance(emit_instance(i)) reproduces i exactly,
/// coefficient by coefficient; preprocessing state is not part of the
/// schema and is not emitted.
std::string emit_instance(const Instance& inst);

/// Wall-clock breakdown attached to a JSON report.
struct ReportTimings {
  double total_ms = 0.0;
  double certificate_ms = 0.0;
  double relaxation_ms = 0.0;
  double oracle_ms = 0.0;
};

/// Machine-readable run report: every field of the HierarchyReport (the
/// per-order records, certification verdict, certificate bundle summary,
/// notes), the oracle comparison when one ran, and timings.
std::string report_to_json(const HierarchyReport& report,
                           const std::optional<OracleResult>& oracle = std::nullopt,
                           const ReportTimings& timings = {});

}  // namespace momsos
