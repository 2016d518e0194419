#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wearsim/sim_engine.hpp"

namespace wearsim {

inline constexpr int kReportSchemaVersion = 1;

/// "section.key" -> value, applied to the raw document before conversion.
using ScenarioOverrides = std::vector<std::pair<std::string, double>>;

/// Numeric keys that ScenarioOverrides may target (e.g. "wear.alpha").
const std::vector<std::string>& overridable_keys();

/// Reads a JSON scenario file. The schema is strict: unknown keys are errors.
///
/// Throws IoError (unreadable file), ParseError (malformed JSON, with line and
/// column), SchemaError (missing/unknown/mistyped key) or ValidationError
/// (every violated invariant at once).
Scenario load_scenario(const std::string& path, const ScenarioOverrides& overrides = {});

/// As load_scenario, from an in-memory document.
Scenario parse_scenario(const std::string& text, const ScenarioOverrides& overrides = {});

/// Same conversion without the final validation pass; used by `validate` to
/// list violations instead of stopping at the first throw.
Scenario parse_scenario_unvalidated(const std::string& text,
                                    const ScenarioOverrides& overrides = {});

std::string read_text_file(const std::string& path);

/// Report as a JSON document with a fixed key order. Numbers use the shortest
/// representation that round-trips; an unbounded lifetime is "unbounded".
std::string report_to_json(const SimReport& report);
SimReport report_from_json(const std::string& text);

void write_report(const SimReport& report, const std::string& path);
SimReport read_report(const std::string& path);

std::string comparison_to_json(const ComparisonReport& comparison);
void write_comparison(const ComparisonReport& comparison, const std::string& path);

inline constexpr const char* kTraceHeader = "time_s,freq_hz,power_w,temp_c,cum_wear";

/// CSV trace: fixed header, one row per point, '.' decimals regardless of locale.
void write_trace_csv(const std::vector<TracePoint>& trace, std::ostream& os);
void write_trace(const std::vector<TracePoint>& trace, const std::string& path);

/// Locale-independent shortest round-trip formatting of a double.
std::string format_number(double value);

/// Writes `contents` to `path`, throwing IoError with the path on failure.
void write_text_file(const std::string& path, const std::string& contents);

} // namespace wearsim
