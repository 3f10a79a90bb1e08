// output.hpp: CSV time series, JSON event sidecar, SVG line chart and run
// manifest.
//
// CSV: header row then one row per sample, columns in csv_columns() order,
// numbers with 12 significant digits ('.' separator, locale independent),
// '\n' line endings.

#pragma once

#include "tricorr/config.hpp"
#include "tricorr/sweep.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tricorr::cli {

const std::vector<std::string>& csv_columns();

/// 12 significant digits, shortest of fixed/scientific; "0" for ±0.
std::string format_number(double v);

/// Numeric CSV column by name; nullopt for branch columns and unknown names.
std::optional<double> numeric_column(const CorrelationRecord& r, std::string_view name);

void write_csv(std::span<const CorrelationRecord> records, std::ostream& out);

/// Event sidecar document: dark periods, freeze intervals, critical times
/// and the observed branch schedule.
std::string events_document(const EventReport& events, const SimConfig& cfg);

/// Writes the CSV to `csv_path` and the events sidecar to `events_path`.
/// Throws EmptyResultError (no file created) for empty input and IoError
/// when a path cannot be written.
void emit_csv(std::span<const CorrelationRecord> records, const EventReport& events,
              const SimConfig& cfg, const std::string& csv_path, const std::string& events_path);

/// One polyline per quantity over Ωt ∈ [0, t_max]. Throws ConfigError for an
/// empty list or a name that is not a numeric CSV column.
void emit_svg(std::span<const CorrelationRecord> records, const std::vector<std::string>& quantities,
              const std::string& path);

std::string render_svg(std::span<const CorrelationRecord> records,
                       const std::vector<std::string>& quantities);

struct RunManifest {
    Settings config;
    std::vector<std::pair<std::string, std::string>> artifacts;  // (kind, path)
    std::string version;
    double wall_clock_seconds = 0;
};

std::string manifest_document(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::string& path);

/// Library version string.
std::string_view version();

}  // namespace tricorr::cli
