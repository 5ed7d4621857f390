#pragma once

#include <cstddef>
#include <vector>

#include "conformetrics/metrics/series.hpp"
#include "conformetrics/selection.hpp"

namespace conformetrics::metrics {

struct HBondCriteria {
  double donor_acceptor_max = 0.30;  // nm
  double dha_angle_min = 150.0;      // degrees, measured at H between H->D and H->A
  double covalent_h_max = 0.12;      // nm, D-H assignment distance when no topology bond exists
};

enum class HBondScope {
  intra_chain, // donor and acceptor in the same chain; total is the sum over chains
  all,         // any donor/acceptor pair in the selection
};

struct HBondResult {
  std::size_t total = 0;
  std::vector<std::size_t> per_chain; // indexed by chain id; bonds attributed to the donor's chain
};

// Geometric hydrogen-bond count. Donors and acceptors are the selected N and O
// atoms. A selected hydrogen belongs to the N/O it is bonded to in the topology,
// otherwise to the nearest selected N/O within covalent_h_max; hydrogens with
// neither are ignored. A triple (D,H,A), A != D, counts when |DA| <= donor_acceptor_max
// and the D-H-A angle >= dha_angle_min. Throws UsageError if the selection has no hydrogens.
HBondResult hbond_count(const Frame& frame, const Selection& sel, const Topology& topology, const HBondCriteria& criteria,
                        HBondScope scope);

std::vector<MetricSeries> hbond_series(const Trajectory& traj, const Selection& sel, const HBondCriteria& criteria,
                                       HBondScope scope, unsigned workers = 1);

} // namespace conformetrics::metrics
