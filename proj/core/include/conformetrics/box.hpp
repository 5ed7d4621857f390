#pragma once

#include <cmath>

#include <Eigen/Core>

namespace conformetrics {

using Vec3 = Eigen::Vector3d;

// Periodic simulation cell. Rows of `vectors` are the box vectors in nm.
//
// Only rectangular cells are supported. An axis of zero length is treated as
// non-periodic; this is how structure files without a unit cell are represented.
class Box {
public:
  Box() : vectors_(Eigen::Matrix3d::Zero()) {}
  explicit Box(const Eigen::Matrix3d& vectors) : vectors_(vectors) {}

  static Box rectangular(double lx, double ly, double lz);
  static Box cubic(double l) { return rectangular(l, l, l); }

  const Eigen::Matrix3d& vectors() const { return vectors_; }
  Vec3 lengths() const { return vectors_.diagonal(); }
  bool is_rectangular() const;
  bool is_periodic(int axis) const { return vectors_(axis, axis) > 0.0; }
  bool fully_periodic() const { return is_periodic(0) && is_periodic(1) && is_periodic(2); }
  double volume() const;

  // Multiply every box vector by `factor` (isotropic scaling).
  Box scaled(double factor) const { return Box(vectors_ * factor); }

  bool operator==(const Box& other) const { return vectors_ == other.vectors_; }

private:
  Eigen::Matrix3d vectors_;
};

// Wrap a displacement so that each periodic component lies in (-L/2, L/2].
// Throws UsageError for non-rectangular boxes.
Vec3 minimum_image(const Vec3& displacement, const Box& box);

// One component of minimum_image for an axis of length l (l <= 0: non-periodic).
inline double minimum_image_component(double d, double l) {
  if (l > 0.0 && (d > 0.5 * l || d <= -0.5 * l)) d -= l * std::ceil(d / l - 0.5);
  return d;
}

// Fold a position into [0, L) along each periodic axis. `image` receives the
// number of box lengths subtracted, so that position + image*L is unchanged.
Vec3 wrap_into_box(const Vec3& position, const Box& box, Eigen::Vector3i* image = nullptr);

} // namespace conformetrics
