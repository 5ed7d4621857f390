#include "conformetrics/metrics/superpose.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "conformetrics/error.hpp"

namespace conformetrics::metrics {
namespace {

Vec3 weighted_centroid(std::span<const Vec3> x, std::span<const double> w, double wsum) {
  Vec3 c = Vec3::Zero();
  for (std::size_t i = 0; i < x.size(); ++i) c += w[i] * x[i];
  return c / wsum;
}

// Singular values of the weighted, centred coordinate spread; the second one
// vanishes for collinear or coincident points.
void check_conditioning(std::span<const Vec3> x, std::span<const double> w, const Vec3& c, const char* which) {
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Vec3 d = x[i] - c;
    cov += w[i] * d * d.transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov);
  const auto s = svd.singularValues();
  if (!(s[0] > 0.0) || s[1] <= 1e-12 * s[0])
    throw NumericError(std::string("superpose: ") + which + " point set is collinear or coincident");
}

} // namespace

Superposition superpose(std::span<const Vec3> mobile, std::span<const Vec3> reference, std::span<const double> weights) {
  const std::size_t n = mobile.size();
  if (n != reference.size()) throw UsageError("superpose: point counts differ");
  if (n < 3) throw UsageError("superpose: at least 3 points are required");
  if (weights.size() != n) throw UsageError("superpose: weight count differs from point count");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw UsageError("superpose: weights must be non-negative");
    wsum += w;
  }
  if (!(wsum > 0.0)) throw UsageError("superpose: weights are all zero");

  const Vec3 cm = weighted_centroid(mobile, weights, wsum);
  const Vec3 cr = weighted_centroid(reference, weights, wsum);
  check_conditioning(mobile, weights, cm, "mobile");
  check_conditioning(reference, weights, cr, "reference");

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) h += weights[i] * (mobile[i] - cm) * (reference[i] - cr).transpose();

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((v * u.transpose()).determinant() < 0.0) d(2, 2) = -1.0;

  Superposition s;
  s.rotation = v * d * u.transpose();
  s.translation = cr - s.rotation * cm;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += weights[i] * (s.rotation * mobile[i] + s.translation - reference[i]).squaredNorm();
  s.rmsd = std::sqrt(acc / wsum);
  return s;
}

Superposition superpose(std::span<const Vec3> mobile, std::span<const Vec3> reference) {
  const std::vector<double> w(mobile.size(), 1.0);
  return superpose(mobile, reference, w);
}

double rmsd_nofit(std::span<const Vec3> a, std::span<const Vec3> b, std::span<const double> weights) {
  if (a.size() != b.size() || a.empty()) throw UsageError("rmsd: point counts differ or are zero");
  double acc = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    acc += w * (a[i] - b[i]).squaredNorm();
    wsum += w;
  }
  return std::sqrt(acc / wsum);
}

Vec3 apply(const Superposition& s, const Vec3& x) { return s.rotation * x + s.translation; }

} // namespace conformetrics::metrics
