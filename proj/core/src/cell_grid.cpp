#include "conformetrics/cell_grid.hpp"

#include <algorithm>
#include <cmath>

#include "conformetrics/error.hpp"

namespace conformetrics {

CellGrid::CellGrid(std::span<const Vec3> positions, std::span<const std::size_t> subset, const Box& box, double cutoff)
    : positions_(positions), box_(box), cutoff_(cutoff), subset_(subset.begin(), subset.end()) {
  if (!(cutoff > 0.0)) throw UsageError("cell grid: cutoff must be positive");
  if (!box.is_rectangular()) throw UsageError("cell grid: only rectangular boxes are supported");

  Vec3 lo = Vec3::Constant(0.0), hi = Vec3::Constant(0.0);
  if (!subset_.empty()) {
    lo = hi = positions_[subset_[0]];
    for (std::size_t i : subset_) {
      lo = lo.cwiseMin(positions_[i]);
      hi = hi.cwiseMax(positions_[i]);
    }
  }
  for (int k = 0; k < 3; ++k) {
    const double l = box.vectors()(k, k);
    periodic_[k] = l > 0.0;
    if (periodic_[k]) {
      int n = static_cast<int>(std::floor(l / cutoff));
      if (n < 3) n = 1;
      dims_[k] = n;
      origin_[k] = 0.0;
      cell_size_[k] = l / n;
    } else {
      const double extent = hi[k] - lo[k];
      int n = std::max(1, static_cast<int>(std::floor(extent / cutoff)));
      n = std::min(n, 1024);
      dims_[k] = n;
      origin_[k] = lo[k];
      cell_size_[k] = n == 1 ? std::max(extent, cutoff) : extent / n;
    }
  }

  const std::size_t ncells = static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  atom_cell_.resize(subset_.size());
  std::vector<std::size_t> count(ncells + 1, 0);
  for (std::size_t s = 0; s < subset_.size(); ++s) {
    const auto c = cell_of(positions_[subset_[s]]);
    atom_cell_[s] = linear(c[0], c[1], c[2]);
    ++count[atom_cell_[s] + 1];
  }
  for (std::size_t c = 0; c < ncells; ++c) count[c + 1] += count[c];
  cell_start_ = count;
  cell_atoms_.resize(subset_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  // Stable by subset order; sort each cell so visiting order is ascending.
  for (std::size_t s = 0; s < subset_.size(); ++s) cell_atoms_[fill[atom_cell_[s]]++] = subset_[s];
  for (std::size_t c = 0; c < ncells; ++c)
    std::sort(cell_atoms_.begin() + static_cast<std::ptrdiff_t>(cell_start_[c]),
              cell_atoms_.begin() + static_cast<std::ptrdiff_t>(cell_start_[c + 1]));
}

std::array<int, 3> CellGrid::cell_of(const Vec3& p) const {
  std::array<int, 3> c{};
  for (int k = 0; k < 3; ++k) {
    double x = p[k] - origin_[k];
    if (periodic_[k]) {
      const double l = box_.vectors()(k, k);
      x -= l * std::floor(x / l);
    }
    int idx = static_cast<int>(std::floor(x / cell_size_[k]));
    c[k] = std::clamp(idx, 0, dims_[k] - 1);
  }
  return c;
}

int CellGrid::axis_neighbors(int axis, int c, std::array<int, 3>& out) const {
  const int n = dims_[axis];
  if (n == 1) {
    out[0] = 0;
    return 1;
  }
  int k = 0;
  for (int off = -1; off <= 1; ++off) {
    int v = c + off;
    if (periodic_[axis]) {
      v = (v + n) % n;
    } else if (v < 0 || v >= n) {
      continue;
    }
    out[k++] = v;
  }
  return k;
}

} // namespace conformetrics
