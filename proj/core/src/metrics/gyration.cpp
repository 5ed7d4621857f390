#include "conformetrics/metrics/gyration.hpp"

#include <cmath>

#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"

namespace conformetrics::metrics {

double radius_of_gyration(const Frame& frame, const Selection& sel, const Topology& topology) {
  const Vec3 com = center_of_mass(frame, sel, topology);
  double acc = 0.0, mtot = 0.0;
  for (std::size_t i : sel.indices) {
    const double m = topology[i].mass;
    acc += m * (frame.positions[i] - com).squaredNorm();
    mtot += m;
  }
  return std::sqrt(acc / mtot);
}

Selection restrict_to_chain(const Selection& sel, const Topology& topology, int chain) {
  Selection out;
  out.label = "(" + sel.label + ") and chain " + std::to_string(chain);
  for (std::size_t i : sel.indices)
    if (topology[i].chain_id == chain) out.indices.push_back(i);
  return out;
}

std::vector<std::pair<int, double>> radius_of_gyration_per_chain(const Frame& frame, const Selection& sel,
                                                                 const Topology& topology) {
  std::vector<std::pair<int, double>> out;
  for (int c = 0; c < topology.chain_count(); ++c) {
    const Selection cs = restrict_to_chain(sel, topology, c);
    if (cs.indices.empty()) continue;
    out.emplace_back(c, radius_of_gyration(frame, cs, topology));
  }
  return out;
}

std::vector<MetricSeries> rg_series(const Trajectory& traj, const Selection& sel, unsigned workers) {
  const std::size_t nf = traj.frames.size();
  std::vector<double> total(nf);
  std::vector<std::vector<std::pair<int, double>>> chains(nf);
  parallel_for(nf, workers, [&](std::size_t f) {
    total[f] = radius_of_gyration(traj.frames[f], sel, traj.topology);
    chains[f] = radius_of_gyration_per_chain(traj.frames[f], sel, traj.topology);
  });
  std::vector<MetricSeries> out;
  MetricSeries t{Metric::rg, "total", {}, total};
  for (const Frame& fr : traj.frames) t.times.push_back(fr.time);
  out.push_back(t);
  if (nf == 0) return out;
  for (std::size_t k = 0; k < chains[0].size(); ++k) {
    MetricSeries c{Metric::rg, chain_scope(chains[0][k].first), t.times, {}};
    for (std::size_t f = 0; f < nf; ++f) c.values.push_back(chains[f][k].second);
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace conformetrics::metrics
