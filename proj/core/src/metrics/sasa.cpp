#include "conformetrics/metrics/sasa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "conformetrics/cell_grid.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"

namespace conformetrics::metrics {

std::vector<Vec3> spiral_sphere_points(int n) {
  if (n < 1) throw UsageError("sphere point count must be positive");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    pts.emplace_back(0.0, 0.0, 1.0);
    return pts;
  }
  // Saff & Kuijlaars generalized spiral.
  double phi = 0.0;
  for (int k = 0; k < n; ++k) {
    const double h = -1.0 + 2.0 * k / (n - 1);
    const double theta = std::acos(std::clamp(h, -1.0, 1.0));
    if (k == 0 || k == n - 1) {
      phi = 0.0;
    } else {
      phi = std::fmod(phi + 3.6 / std::sqrt(n * (1.0 - h * h)), 2.0 * std::numbers::pi);
    }
    pts.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), h);
  }
  return pts;
}

SasaResult sasa(const Frame& frame, const Selection& sel, const Topology& topology, const SasaParams& params) {
  if (!(params.probe_radius > 0.0)) throw UsageError("sasa: probe radius must be positive");
  if (params.sphere_points < 12) throw UsageError("sasa: at least 12 sphere points are required");
  const std::size_t n = sel.size();
  std::vector<double> inflated(topology.size(), 0.0);
  double rmax = 0.0;
  for (std::size_t i : sel.indices) {
    const auto r = params.radii.radius(topology[i].element);
    if (!r) throw UsageError(fmt::format("sasa: no van der Waals radius for element '{}' (atom {} {})", topology[i].element, i + 1,
                                         topology[i].name));
    inflated[i] = *r + params.probe_radius;
    rmax = std::max(rmax, inflated[i]);
  }

  const auto points = spiral_sphere_points(params.sphere_points);
  const CellGrid grid(frame.positions, sel.indices, frame.box, 2.0 * rmax);

  SasaResult res;
  res.per_atom.resize(n);
  struct Neighbor {
    Vec3 d;
    double r2;
  };
  std::vector<Neighbor> nbrs;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = sel.indices[k];
    const double ri = inflated[i];
    nbrs.clear();
    grid.for_each_near(frame.positions[i], [&](std::size_t j, const Vec3& d) {
      if (j == i) return;
      const double rj = inflated[j];
      if (d.squaredNorm() < (ri + rj) * (ri + rj)) nbrs.push_back({d, rj * rj});
    });
    // Nearest neighbours first: they bury the most points.
    std::sort(nbrs.begin(), nbrs.end(), [](const Neighbor& a, const Neighbor& b) { return a.d.squaredNorm() < b.d.squaredNorm(); });
    std::size_t exposed = 0;
    std::size_t last_hit = 0;
    for (const Vec3& u : points) {
      const Vec3 p = ri * u;
      bool buried = false;
      if (!nbrs.empty() && (p - nbrs[last_hit].d).squaredNorm() < nbrs[last_hit].r2) {
        buried = true;
      } else {
        for (std::size_t m = 0; m < nbrs.size(); ++m) {
          if ((p - nbrs[m].d).squaredNorm() < nbrs[m].r2) {
            buried = true;
            last_hit = m;
            break;
          }
        }
      }
      if (!buried) ++exposed;
    }
    res.per_atom[k] = 4.0 * std::numbers::pi * ri * ri * static_cast<double>(exposed) / static_cast<double>(points.size());
    res.total += res.per_atom[k];
  }
  return res;
}

std::vector<MetricSeries> sasa_series(const Trajectory& traj, const Selection& sel, const SasaParams& params, unsigned workers) {
  const std::size_t nf = traj.frames.size();
  std::vector<SasaResult> results(nf);
  parallel_for(nf, workers, [&](std::size_t f) { results[f] = sasa(traj.frames[f], sel, traj.topology, params); });

  std::vector<MetricSeries> out;
  MetricSeries total{Metric::sasa, "total", {}, {}};
  for (std::size_t f = 0; f < nf; ++f) {
    total.times.push_back(traj.frames[f].time);
    total.values.push_back(results[f].total);
  }
  out.push_back(total);
  std::vector<int> chains;
  for (std::size_t i : sel.indices) chains.push_back(traj.topology[i].chain_id);
  std::vector<int> distinct = chains;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int c : distinct) {
    MetricSeries s{Metric::sasa, chain_scope(c), total.times, std::vector<double>(nf, 0.0)};
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t k = 0; k < chains.size(); ++k)
        if (chains[k] == c) s.values[f] += results[f].per_atom[k];
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace conformetrics::metrics
