#pragma once

#include <utility>
#include <vector>

#include "conformetrics/metrics/series.hpp"
#include "conformetrics/selection.hpp"

namespace conformetrics::metrics {

// Mass-weighted radius of gyration about the selection's centre of mass, nm.
// Coordinates are used as stored (molecules are assumed whole).
double radius_of_gyration(const Frame& frame, const Selection& sel, const Topology& topology);

// One value per chain that has atoms in the selection, as (chain_id, Rg).
std::vector<std::pair<int, double>> radius_of_gyration_per_chain(const Frame& frame, const Selection& sel,
                                                                 const Topology& topology);

// "total" series (all selected atoms jointly) followed by one series per chain.
std::vector<MetricSeries> rg_series(const Trajectory& traj, const Selection& sel, unsigned workers = 1);

// Selection restricted to one chain; empty indices if the chain has no selected atoms.
Selection restrict_to_chain(const Selection& sel, const Topology& topology, int chain);

} // namespace conformetrics::metrics
