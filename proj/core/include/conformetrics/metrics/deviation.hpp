#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conformetrics/metrics/series.hpp"
#include "conformetrics/selection.hpp"
#include "conformetrics/topology.hpp"

namespace conformetrics::metrics {

// Per-frame RMSD over `sel` against `reference`.
//
// fit=true superposes the selection onto the reference with uniform weights
// first (needs >= 3 atoms). fit=false is the raw coordinate RMSD; no
// minimum-image unwrapping is applied in either mode.
MetricSeries rmsd_series(const Trajectory& traj, const Selection& sel, const Frame& reference, bool fit, unsigned workers = 1);

struct RmsfProfile {
  std::vector<int> residue_seq;
  std::vector<double> rmsf;                         // nm
  std::string averaging = "mean over chain copies";
};

struct RmsfOptions {
  // Atoms used for the per-frame superposition; defaults to the measured selection.
  std::optional<Selection> fit_selection;
};

// Per-residue RMSF.
//
// Pass 1 fits every frame onto the first frame and forms the average structure;
// pass 2 refits every frame onto that average and measures per-atom RMS
// deviation about the new average. Atom values are averaged within each residue
// and then across chain copies, which must share the same residue numbering.
RmsfProfile rmsf_profile(const Trajectory& traj, const Selection& sel, const RmsfOptions& options = {});

} // namespace conformetrics::metrics
