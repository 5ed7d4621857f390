#pragma once

#include <span>

#include <Eigen/Core>

#include "conformetrics/box.hpp"

namespace conformetrics::metrics {

// Rigid transform mapping mobile onto reference: x' = rotation * x + translation.
struct Superposition {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  double rmsd = 0.0; // weighted RMSD after fitting, nm
};

// Weighted least-squares superposition (Kabsch). The rotation is always proper.
// Requires >= 3 paired points and non-negative weights that are not all zero;
// collinear or coincident point sets raise NumericError.
Superposition superpose(std::span<const Vec3> mobile, std::span<const Vec3> reference, std::span<const double> weights);

// Uniform weights.
Superposition superpose(std::span<const Vec3> mobile, std::span<const Vec3> reference);

// Weighted RMSD without fitting.
double rmsd_nofit(std::span<const Vec3> a, std::span<const Vec3> b, std::span<const double> weights = {});

Vec3 apply(const Superposition& s, const Vec3& x);

} // namespace conformetrics::metrics
