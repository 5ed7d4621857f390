#include "conformetrics/box.hpp"

#include <cmath>

#include "conformetrics/error.hpp"

namespace conformetrics {

Box Box::rectangular(double lx, double ly, double lz) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = lx;
  m(1, 1) = ly;
  m(2, 2) = lz;
  return Box(m);
}

bool Box::is_rectangular() const {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (r != c && vectors_(r, c) != 0.0) return false;
  return true;
}

double Box::volume() const { return vectors_(0, 0) * vectors_(1, 1) * vectors_(2, 2); }

Vec3 minimum_image(const Vec3& displacement, const Box& box) {
  if (!box.is_rectangular()) throw UsageError("minimum_image: only rectangular boxes are supported");
  Vec3 d = displacement;
  for (int k = 0; k < 3; ++k) d[k] = minimum_image_component(d[k], box.vectors()(k, k));
  return d;
}

Vec3 wrap_into_box(const Vec3& position, const Box& box, Eigen::Vector3i* image) {
  Vec3 p = position;
  Eigen::Vector3i shift = Eigen::Vector3i::Zero();
  for (int k = 0; k < 3; ++k) {
    const double l = box.vectors()(k, k);
    if (l <= 0.0) continue;
    const double n = std::floor(p[k] / l);
    p[k] -= n * l;
    if (p[k] >= l) { // rounding at the upper edge
      p[k] -= l;
      shift[k] += 1;
    }
    shift[k] += static_cast<int>(n);
  }
  if (image) *image = shift;
  return p;
}

} // namespace conformetrics
