#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "conformetrics/metrics/series.hpp"

namespace conformetrics::stats {

// Closed time window [start, end] in ps.
struct WindowSpec {
  double start = 0.0;
  double end = 0.0;
};

inline constexpr std::string_view kSingleTrajectoryCaveat =
    "temporal SD within a single trajectory, not replicate uncertainty";

struct WindowStats {
  double mean = 0.0;
  double sd = 0.0;          // sample standard deviation (N-1)
  std::size_t n_frames = 0;
  WindowSpec window;
  std::string_view caveat = kSingleTrajectoryCaveat;
};

// Throws UsageError when the window is empty/inverted, falls outside the
// series' time range, or holds fewer than 2 samples.
WindowStats window_stats(const metrics::MetricSeries& series, const WindowSpec& window);

// Values of the series with start <= t <= end (after the same validation as window_stats).
std::vector<double> window_values(const metrics::MetricSeries& series, const WindowSpec& window);

// Signed percentage change of treated relative to control, rounded half away from zero:
// round(100 * (treated - control) / control). Throws UsageError for a zero control mean.
long pct_delta(double control_mean, double treated_mean);
long pct_delta(const WindowStats& control, const WindowStats& treated);

} // namespace conformetrics::stats
