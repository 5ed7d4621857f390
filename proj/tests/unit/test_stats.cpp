#include <doctest.h>

#include <cmath>
#include <numeric>

#include "conformetrics/error.hpp"
#include "conformetrics/stats/convergence.hpp"
#include "conformetrics/stats/window.hpp"
#include "oracles.hpp"

using namespace conformetrics;
using namespace conformetrics::stats;

namespace {

metrics::MetricSeries ramp(int n) {
  metrics::MetricSeries s;
  for (int i = 0; i < n; ++i) {
    s.times.push_back(10.0 * i);
    s.values.push_back(i);
  }
  return s;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("window stats are inclusive and use N-1") {
  const auto s = ramp(11);  // t = 0..100
  const WindowStats w = window_stats(s, {80, 100});
  CHECK(w.n_frames == 3);
  CHECK(w.mean == doctest::Approx(9));
  CHECK(w.sd == doctest::Approx(1));
  CHECK(w.caveat == kSingleTrajectoryCaveat);
  CHECK(window_values(s, {0, 20}) == std::vector<double>{0, 1, 2});
}

TEST_CASE("window errors") {
  const auto s = ramp(11);
  CHECK_THROWS_AS(window_stats(s, {50, 40}), UsageError);
  CHECK_THROWS_AS(window_stats(s, {90, 120}), UsageError);
  CHECK_THROWS_AS(window_stats(s, {91, 99}), UsageError);
  try {
    window_stats(s, {90, 120});
  } catch (const UsageError& e) {
    const std::string m = e.what();
    CHECK(m.find("120") != std::string::npos);
    CHECK(m.find("100") != std::string::npos);
  }
}

TEST_CASE("pct_delta rounds half away from zero") {
  CHECK(pct_delta(100.0, 137.0) == 37);
  CHECK(pct_delta(200.0, 201.0) == 1);   // +0.5 -> +1
  CHECK(pct_delta(200.0, 199.0) == -1);  // -0.5 -> -1
  CHECK(pct_delta(5.0, 5.0) == 0);
  CHECK_THROWS_AS(pct_delta(0.0, 1.0), UsageError);
}

TEST_CASE("block averaging on white noise") {
  const auto x = oracle::ar1_series(1 << 16, 0.0, 3);
  const auto sizes = default_block_sizes(x.size());
  CHECK(sizes.front() == 1);
  CHECK(sizes.back() == x.size() / 4);
  const auto r = block_average_se(x, sizes);
  CHECK(r.plateau);
  CHECK(r.plateau_se == doctest::Approx(1.0 / std::sqrt(x.size())).epsilon(0.15));
  CHECK_THROWS_AS(block_average_se(std::vector<double>(10, 1.0), std::vector<std::size_t>{4}), UsageError);
}

TEST_CASE("autocorrelation time") {
  const auto white = oracle::ar1_series(100000, 0.0, 4);
  CHECK(integrated_autocorr_time(white).tau_int == doctest::Approx(1.0).epsilon(0.1));
  const auto ar = oracle::ar1_series(200000, 0.8, 5);
  CHECK(integrated_autocorr_time(ar).tau_int == doctest::Approx(9.0).epsilon(0.15));
  const auto flat = std::vector<double>(200, 2.0);
  const auto d = integrated_autocorr_time(flat);
  CHECK(d.degenerate);
  CHECK_THROWS_AS(integrated_autocorr_time(std::vector<double>(50, 0.0)), UsageError);
}

}
