#include "conformetrics/stats/convergence.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"

namespace conformetrics::stats {

BlockAverageResult block_average_se(std::span<const double> values, std::span<const std::size_t> block_sizes) {
  if (block_sizes.empty()) throw UsageError("block averaging: no block sizes given");
  const std::size_t bmax = *std::max_element(block_sizes.begin(), block_sizes.end());
  if (std::find(block_sizes.begin(), block_sizes.end(), std::size_t{0}) != block_sizes.end())
    throw UsageError("block averaging: block size 0");
  if (values.size() < 4 * bmax)
    throw UsageError(fmt::format("block averaging: {} samples, need at least {} (4 x largest block {})", values.size(), 4 * bmax, bmax));

  BlockAverageResult res;
  for (std::size_t b : block_sizes) {
    const std::size_t m = values.size() / b;
    std::vector<double> means(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (std::size_t t = k * b; t < (k + 1) * b; ++t) s += values[t];
      means[k] = s / static_cast<double>(b);
    }
    double mu = 0.0;
    for (double x : means) mu += x;
    mu /= static_cast<double>(m);
    double ss = 0.0;
    for (double x : means) ss += (x - mu) * (x - mu);
    const double sd = std::sqrt(ss / static_cast<double>(m - 1));
    res.estimates.push_back({b, m, sd / std::sqrt(static_cast<double>(m))});
  }
  for (std::size_t k = 0; k + 1 < res.estimates.size(); ++k) {
    const double a = res.estimates[k].se, b = res.estimates[k + 1].se;
    const bool flat = (a == 0.0 && b == 0.0) || (a > 0.0 && std::abs(b - a) < kPlateauTolerance * a);
    if (flat) {
      res.plateau = true;
      res.plateau_block_size = res.estimates[k + 1].block_size;
      res.plateau_se = b;
      break;
    }
  }
  return res;
}

std::vector<std::size_t> default_block_sizes(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t b = 1; 4 * b <= n; b *= 2) out.push_back(b);
  return out;
}

AutocorrResult integrated_autocorr_time(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 100) throw UsageError(fmt::format("autocorrelation: {} samples, need at least 100", n));
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(n);
  std::vector<double> d(n);
  for (std::size_t t = 0; t < n; ++t) d[t] = values[t] - mean;

  auto autocov = [&](std::size_t k) {
    double s = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) s += d[t] * d[t + k];
    return s / static_cast<double>(n);
  };

  AutocorrResult res;
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) {
    res.degenerate = true;
    res.tau_int = static_cast<double>(n);
    res.effective_samples = 1.0;
    res.window = 0;
    return res;
  }
  double tau = 1.0;
  std::size_t m = 1;
  for (; m < n; ++m) {
    tau += 2.0 * autocov(m) / c0;
    if (static_cast<double>(m) >= kAutocorrWindowFactor * tau) break;
  }
  if (m >= n) {
    res.window_converged = false;
    m = n - 1;
  }
  res.tau_int = tau;
  res.window = m;
  res.effective_samples = static_cast<double>(n) / tau;
  return res;
}

} // namespace conformetrics::stats
