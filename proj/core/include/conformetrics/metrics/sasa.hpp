#pragma once

#include <vector>

#include "conformetrics/elements.hpp"
#include "conformetrics/metrics/series.hpp"
#include "conformetrics/selection.hpp"

namespace conformetrics::metrics {

struct SasaParams {
  double probe_radius = 0.14;   // nm (1.4 angstrom water probe)
  int sphere_points = 960;
  RadiiTable radii = RadiiTable::bondi();
};

struct SasaResult {
  double total = 0.0;             // nm^2
  std::vector<double> per_atom;   // nm^2, parallel to the selection's indices
};

// Quasi-uniform unit-sphere points from the generalized spiral construction.
// Deterministic for a given n.
std::vector<Vec3> spiral_sphere_points(int n);

// Shrake-Rupley solvent-accessible surface area of the selected atoms. Only
// selected atoms occlude each other. Neighbour search uses a cell grid with the
// minimum-image convention on periodic axes.
SasaResult sasa(const Frame& frame, const Selection& sel, const Topology& topology, const SasaParams& params);

// "total" series followed by per-chain contributions (sums of per-atom areas).
std::vector<MetricSeries> sasa_series(const Trajectory& traj, const Selection& sel, const SasaParams& params,
                                      unsigned workers = 1);

} // namespace conformetrics::metrics
