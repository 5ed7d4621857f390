#include "conformetrics/metrics/hbonds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conformetrics/cell_grid.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"

namespace conformetrics::metrics {
namespace {

bool is_polar(const Atom& a) { return a.element == "N" || a.element == "O"; }

} // namespace

HBondResult hbond_count(const Frame& frame, const Selection& sel, const Topology& topology, const HBondCriteria& criteria,
                        HBondScope scope) {
  if (!(criteria.donor_acceptor_max > 0.0) || !(criteria.covalent_h_max > 0.0) || !(criteria.dha_angle_min > 0.0) ||
      criteria.dha_angle_min > 180.0)
    throw UsageError("hbonds: thresholds must be positive and the angle in (0, 180]");

  std::vector<std::size_t> polar, hydrogens;
  std::vector<bool> selected(topology.size(), false);
  for (std::size_t i : sel.indices) {
    selected[i] = true;
    if (is_polar(topology[i])) polar.push_back(i);
    if (topology[i].element == "H") hydrogens.push_back(i);
  }
  if (hydrogens.empty()) throw UsageError("hbonds: selection '" + sel.label + "' contains no hydrogens");

  HBondResult res;
  res.per_chain.assign(static_cast<std::size_t>(std::max(topology.chain_count(), 1)), 0);
  if (polar.empty()) return res;

  const auto bonded = topology.bonded_neighbors();
  const CellGrid grid(frame.positions, polar, frame.box,
                      std::max(criteria.donor_acceptor_max, criteria.covalent_h_max) * (1.0 + 1e-9));
  const double cos_min = std::cos(criteria.dha_angle_min * std::numbers::pi / 180.0);
  const double da2 = criteria.donor_acceptor_max * criteria.donor_acceptor_max;
  const double dh2 = criteria.covalent_h_max * criteria.covalent_h_max;

  for (std::size_t h : hydrogens) {
    // Donor assignment.
    std::size_t donor = topology.size();
    for (std::size_t nb : bonded[h])
      if (selected[nb] && is_polar(topology[nb])) {
        donor = nb;
        break;
      }
    if (donor == topology.size()) {
      double best = dh2;
      grid.for_each_near(frame.positions[h], [&](std::size_t j, const Vec3& d) {
        const double r2 = d.squaredNorm();
        if (r2 <= best && (donor == topology.size() || r2 < best || j < donor)) {
          best = r2;
          donor = j;
        }
      });
    }
    if (donor == topology.size()) continue;

    const Vec3 xh = frame.positions[h];
    const Vec3 xd = frame.positions[donor];
    const Vec3 hd = minimum_image(xd - xh, frame.box);
    grid.for_each_near(xd, [&](std::size_t a, const Vec3& da) {
      if (a == donor || da.squaredNorm() > da2) return;
      if (scope == HBondScope::intra_chain && topology[a].chain_id != topology[donor].chain_id) return;
      // H->A via the donor keeps the three atoms in one consistent image.
      const Vec3 ha = hd + da;
      const double denom = hd.norm() * ha.norm();
      if (!(denom > 0.0)) return;
      if (hd.dot(ha) / denom <= cos_min) {
        ++res.total;
        ++res.per_chain[static_cast<std::size_t>(topology[donor].chain_id)];
      }
    });
  }
  return res;
}

std::vector<MetricSeries> hbond_series(const Trajectory& traj, const Selection& sel, const HBondCriteria& criteria,
                                       HBondScope scope, unsigned workers) {
  const std::size_t nf = traj.frames.size();
  std::vector<HBondResult> results(nf);
  parallel_for(nf, workers, [&](std::size_t f) { results[f] = hbond_count(traj.frames[f], sel, traj.topology, criteria, scope); });
  std::vector<MetricSeries> out;
  MetricSeries total{Metric::hbonds, "total", {}, {}};
  for (std::size_t f = 0; f < nf; ++f) {
    total.times.push_back(traj.frames[f].time);
    total.values.push_back(static_cast<double>(results[f].total));
  }
  out.push_back(total);
  std::vector<bool> present(static_cast<std::size_t>(std::max(traj.topology.chain_count(), 1)), false);
  for (std::size_t i : sel.indices) present[static_cast<std::size_t>(traj.topology[i].chain_id)] = true;
  for (std::size_t c = 0; c < present.size(); ++c) {
    if (!present[c]) continue;
    MetricSeries s{Metric::hbonds, chain_scope(static_cast<int>(c)), total.times, {}};
    for (std::size_t f = 0; f < nf; ++f) s.values.push_back(static_cast<double>(results[f].per_chain[c]));
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace conformetrics::metrics
