#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conformetrics::metrics {

enum class Metric { rmsd, rg, sasa, hbonds };

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

// Per-frame values of one metric. Values are in internal units: nm for RMSD
// and Rg, nm^2 for SASA, counts for hydrogen bonds.
struct MetricSeries {
  Metric metric = Metric::rg;
  std::string scope = "total";   // "total" or "chain <k>"
  std::vector<double> times;     // ps, strictly increasing
  std::vector<double> values;
};

std::string chain_scope(int chain);

// Throws UsageError unless times are strictly increasing and sizes match.
void validate_series(const MetricSeries& s);

} // namespace conformetrics::metrics
