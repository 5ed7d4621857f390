#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "conformetrics/box.hpp"

namespace conformetrics {

// Linked-cell spatial hash over a subset of atoms.
//
// Periodic axes use the minimum-image convention; an axis with fewer than three
// cells collapses to a single cell so no pair is visited twice. Non-periodic axes
// are binned over the bounding range of the subset. Visiting order is a pure
// function of the input, so results are reproducible.
class CellGrid {
public:
  CellGrid(std::span<const Vec3> positions, std::span<const std::size_t> subset, const Box& box, double cutoff);

  // Calls f(i, j, d) once for every unordered pair with |d| < cutoff, where i < j
  // are atom ordinals and d = minimum_image(x_j - x_i).
  template <class F>
  void for_each_pair(F&& f) const;

  // Calls f(j, d) for every subset atom j with |d| < cutoff, d = minimum_image(x_j - point).
  template <class F>
  void for_each_near(const Vec3& point, F&& f) const;

  double cutoff() const { return cutoff_; }
  std::array<int, 3> dims() const { return dims_; }

private:
  std::array<int, 3> cell_of(const Vec3& p) const;
  int linear(int x, int y, int z) const { return (z * dims_[1] + y) * dims_[0] + x; }
  // Distinct neighbouring cell coordinates along one axis (at most 3).
  int axis_neighbors(int axis, int c, std::array<int, 3>& out) const;
  Vec3 image(const Vec3& d) const;

  std::span<const Vec3> positions_;
  Box box_;
  double cutoff_;
  std::array<int, 3> dims_{1, 1, 1};
  std::array<bool, 3> periodic_{false, false, false};
  Vec3 origin_ = Vec3::Zero();
  Vec3 cell_size_ = Vec3::Ones();
  std::vector<std::size_t> cell_start_;   // CSR offsets, size ncells+1
  std::vector<std::size_t> cell_atoms_;   // atom ordinals grouped by cell, ascending within a cell
  std::vector<int> atom_cell_;            // cell per subset entry (parallel to subset order)
  std::vector<std::size_t> subset_;
};

inline Vec3 CellGrid::image(const Vec3& d) const {
  Vec3 r = d;
  for (int k = 0; k < 3; ++k)
    if (periodic_[k]) r[k] = minimum_image_component(r[k], box_.vectors()(k, k));
  return r;
}

template <class F>
void CellGrid::for_each_pair(F&& f) const {
  const double rc2 = cutoff_ * cutoff_;
  std::array<int, 3> nx{}, ny{}, nz{};
  for (std::size_t s = 0; s < subset_.size(); ++s) {
    const std::size_t i = subset_[s];
    const int c = atom_cell_[s];
    const int cx = c % dims_[0];
    const int cy = (c / dims_[0]) % dims_[1];
    const int cz = c / (dims_[0] * dims_[1]);
    const int kx = axis_neighbors(0, cx, nx);
    const int ky = axis_neighbors(1, cy, ny);
    const int kz = axis_neighbors(2, cz, nz);
    for (int a = 0; a < kz; ++a)
      for (int b = 0; b < ky; ++b)
        for (int e = 0; e < kx; ++e) {
          const int cell = linear(nx[e], ny[b], nz[a]);
          for (std::size_t p = cell_start_[cell]; p < cell_start_[cell + 1]; ++p) {
            const std::size_t j = cell_atoms_[p];
            if (j <= i) continue;
            const Vec3 d = image(positions_[j] - positions_[i]);
            if (d.squaredNorm() < rc2) f(i, j, d);
          }
        }
  }
}

template <class F>
void CellGrid::for_each_near(const Vec3& point, F&& f) const {
  const double rc2 = cutoff_ * cutoff_;
  const auto c = cell_of(point);
  std::array<int, 3> nx{}, ny{}, nz{};
  const int kx = axis_neighbors(0, c[0], nx);
  const int ky = axis_neighbors(1, c[1], ny);
  const int kz = axis_neighbors(2, c[2], nz);
  for (int a = 0; a < kz; ++a)
    for (int b = 0; b < ky; ++b)
      for (int e = 0; e < kx; ++e) {
        const int cell = linear(nx[e], ny[b], nz[a]);
        for (std::size_t p = cell_start_[cell]; p < cell_start_[cell + 1]; ++p) {
          const std::size_t j = cell_atoms_[p];
          const Vec3 d = image(positions_[j] - point);
          if (d.squaredNorm() < rc2) f(j, d);
        }
      }
}

} // namespace conformetrics
