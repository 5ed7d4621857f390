#include "conformetrics/sim/neighbor_list.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "conformetrics/cell_grid.hpp"
#include "conformetrics/error.hpp"

namespace conformetrics::sim {

PairList build_pair_list(const std::vector<Vec3>& positions, const Box& box, double list_radius) {
  for (int k = 0; k < 3; ++k)
    if (box.is_periodic(k) && !(box.vectors()(k, k) > 2.0 * list_radius))
      throw UsageError(fmt::format("neighbour list: box edge {:.4f} nm is not larger than twice the list radius {:.4f} nm",
                                   box.vectors()(k, k), list_radius));
  std::vector<std::size_t> all(positions.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const CellGrid grid(positions, all, box, list_radius);
  PairList out;
  grid.for_each_pair([&](std::size_t i, std::size_t j, const Vec3&) {
    out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  });
  return out;
}

NeighborList::NeighborList(double cutoff, double buffer, int rebuild_interval)
    : cutoff_(cutoff), buffer_(buffer), rebuild_interval_(rebuild_interval) {
  if (!(cutoff > 0.0) || !(buffer >= 0.0)) throw UsageError("neighbour list: cutoff must be positive and buffer non-negative");
}

void NeighborList::build(const SimState& state, const ForceField& ff) {
  PairList all = build_pair_list(state.positions, state.box, cutoff_ + buffer_);
  pairs_.clear();
  pairs_.reserve(all.size());
  for (const auto& p : all)
    if (!ff.excluded(p.first, p.second)) pairs_.push_back(p);
  reference_ = state.unwrapped();
  reference_box_ = state.box.lengths();
  steps_since_build_ = 0;
  ++rebuilds_;
}

bool NeighborList::needs_rebuild(const SimState& state) const {
  if (reference_.size() != state.size()) return true;
  if (rebuild_interval_ > 0 && steps_since_build_ >= rebuild_interval_) return true;
  const Vec3 l = state.box.lengths();
  double scale_change = 0.0;
  Vec3 ratio = Vec3::Ones();
  for (int k = 0; k < 3; ++k) {
    if (reference_box_[k] > 0.0) {
      ratio[k] = l[k] / reference_box_[k];
      scale_change = std::max(scale_change, std::abs(1.0 - ratio[k]));
    }
  }
  const auto now = state.unwrapped();
  double max_disp2 = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i)
    max_disp2 = std::max(max_disp2, (now[i] - reference_[i].cwiseProduct(ratio)).squaredNorm());
  return 2.0 * std::sqrt(max_disp2) + (cutoff_ + buffer_) * scale_change >= buffer_;
}

bool NeighborList::update(const SimState& state, const ForceField& ff) {
  if (needs_rebuild(state)) {
    build(state, ff);
    return true;
  }
  ++steps_since_build_;
  return false;
}

} // namespace conformetrics::sim
