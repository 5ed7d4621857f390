#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "conformetrics/sim/forcefield.hpp"
#include "conformetrics/sim/state.hpp"

namespace conformetrics::sim {

using PairList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Every minimum-image pair (i < j) closer than `list_radius`, built on a cell
// grid. Throws UsageError if a periodic box edge is not larger than 2 * list_radius.
PairList build_pair_list(const std::vector<Vec3>& positions, const Box& box, double list_radius);

// Buffered Verlet list over non-excluded pairs within cutoff + buffer.
//
// The list stays valid while no pair distance can have shrunk by more than the
// buffer: it is rebuilt once 2 * (max displacement since the last build) plus the
// change in box scale, taken over the list radius, reaches the buffer, and in any
// case every `rebuild_interval` steps when that is positive.
class NeighborList {
public:
  NeighborList(double cutoff, double buffer, int rebuild_interval = 0);

  void build(const SimState& state, const ForceField& ff);
  // Rebuild if required; returns true when a rebuild happened.
  bool update(const SimState& state, const ForceField& ff);
  bool needs_rebuild(const SimState& state) const;

  const PairList& pairs() const { return pairs_; }
  double cutoff() const { return cutoff_; }
  double buffer() const { return buffer_; }
  std::size_t rebuild_count() const { return rebuilds_; }

private:
  double cutoff_;
  double buffer_;
  int rebuild_interval_;
  int steps_since_build_ = 0;
  std::size_t rebuilds_ = 0;
  PairList pairs_;
  std::vector<Vec3> reference_;   // unwrapped positions at build time
  Vec3 reference_box_ = Vec3::Zero();
};

} // namespace conformetrics::sim
