#include "conformetrics/metrics/series.hpp"

#include "conformetrics/error.hpp"

namespace conformetrics::metrics {

std::string_view to_string(Metric m) {
  switch (m) {
  case Metric::rmsd: return "rmsd";
  case Metric::rg: return "rg";
  case Metric::sasa: return "sasa";
  case Metric::hbonds: return "hbonds";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "rmsd") return Metric::rmsd;
  if (name == "rg") return Metric::rg;
  if (name == "sasa") return Metric::sasa;
  if (name == "hbonds") return Metric::hbonds;
  return std::nullopt;
}

std::string chain_scope(int chain) { return "chain " + std::to_string(chain); }

void validate_series(const MetricSeries& s) {
  if (s.times.size() != s.values.size()) throw UsageError("metric series: times and values differ in length");
  for (std::size_t i = 1; i < s.times.size(); ++i)
    if (!(s.times[i] > s.times[i - 1]))
      throw UsageError("metric series '" + std::string(to_string(s.metric)) + "': times are not strictly increasing at sample " +
                       std::to_string(i));
}

} // namespace conformetrics::metrics
