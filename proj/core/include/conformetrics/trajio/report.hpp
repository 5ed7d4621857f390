#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conformetrics/metrics/series.hpp"
#include "conformetrics/stats/convergence.hpp"
#include "conformetrics/stats/window.hpp"

namespace conformetrics::trajio {

struct MetricEntry {
  metrics::Metric metric = metrics::Metric::rg;
  std::string selection;                             // query text the metric was computed over
  stats::WindowStats stats;                          // of the "total" series, internal units
  std::vector<metrics::MetricSeries> series;         // "total" first, then per-chain
  std::optional<stats::BlockAverageResult> block_se; // internal units
  std::optional<stats::AutocorrResult> tau_int;
};

struct MetricReport {
  std::string condition_label;
  std::vector<MetricEntry> entries;
  // Free-form provenance: window bounds, thresholds, stride, inputs.
  std::vector<std::pair<std::string, std::string>> provenance;

  const MetricEntry* find(metrics::Metric m) const;
};

enum class ReportFormat { csv, json };

inline constexpr std::string_view kReportCsvHeader =
    "condition,metric,mean,sd,unit,window_start_ps,window_end_ps,delta_pct_vs_control";

// Reporting units and precision: RMSD/Rg in angstrom with 2 decimals, SASA in
// square angstrom as an integer, hydrogen bonds as a count with 1 decimal.
std::string_view unit_name(metrics::Metric m);
double to_report_units(metrics::Metric m, double internal_value);
int report_decimals(metrics::Metric m);
std::string render_value(metrics::Metric m, double internal_value, bool thousands_separator = false);
// "32.06 ± 0.69"
std::string render_mean_sd(metrics::Metric m, double mean, double sd, bool thousands_separator = false);
// "+37", "-11", "0"
std::string format_delta(long pct);

// Serialise a report. With `control` set, every row carries the percentage
// change of its mean relative to the control's mean for the same metric.
// Throws UsageError when with_delta is requested without a control, or when the
// control lacks one of the report's metrics.
std::string emit_report(const MetricReport& report, ReportFormat format, const MetricReport* control = nullptr,
                        bool with_delta = false);

// Inverse of the JSON emitter for the fields needed by comparisons (no series).
MetricReport parse_report_json(std::string_view text);

} // namespace conformetrics::trajio
