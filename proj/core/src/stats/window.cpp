#include "conformetrics/stats/window.hpp"

#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"

namespace conformetrics::stats {

std::vector<double> window_values(const metrics::MetricSeries& series, const WindowSpec& w) {
  metrics::validate_series(series);
  if (!(w.start >= 0.0) || !(w.end > w.start))
    throw UsageError(fmt::format("window [{}, {}] ps is empty or inverted", w.start, w.end));
  if (series.times.empty()) throw UsageError("window: series is empty");
  const double t0 = series.times.front(), t1 = series.times.back();
  if (w.start < t0 || w.end > t1)
    throw UsageError(fmt::format("window [{}, {}] ps lies outside the series time range [{}, {}] ps", w.start, w.end, t0, t1));
  std::vector<double> out;
  for (std::size_t i = 0; i < series.times.size(); ++i)
    if (series.times[i] >= w.start && series.times[i] <= w.end) out.push_back(series.values[i]);
  if (out.size() < 2)
    throw UsageError(fmt::format("window [{}, {}] ps holds {} sample(s); at least 2 are required", w.start, w.end, out.size()));
  return out;
}

WindowStats window_stats(const metrics::MetricSeries& series, const WindowSpec& w) {
  const auto v = window_values(series, w);
  WindowStats s;
  s.window = w;
  s.n_frames = v.size();
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return s;
}

long pct_delta(double control_mean, double treated_mean) {
  if (control_mean == 0.0) throw UsageError("pct_delta: control mean is zero");
  const double pct = 100.0 * (treated_mean - control_mean) / control_mean;
  return std::lround(pct); // lround rounds halfway cases away from zero
}

long pct_delta(const WindowStats& control, const WindowStats& treated) { return pct_delta(control.mean, treated.mean); }

} // namespace conformetrics::stats
