#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {
namespace {

Vec3 centroid(std::span<const Vec3> x) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : x) c += p;
  return c / static_cast<double>(x.size());
}

Eigen::Matrix3d rotation_of(const Eigen::Vector4d& q_in) {
  const Eigen::Vector4d q = q_in.normalized();
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Vec3 min_image(Vec3 d, const conformetrics::Box& box) {
  for (int k = 0; k < 3; ++k) {
    const double l = box.vectors()(k, k);
    if (l > 0) d[k] -= l * std::round(d[k] / l);
  }
  return d;
}

bool polar(const conformetrics::Atom& a) { return a.element == "N" || a.element == "O"; }

} // namespace

double quaternion_grid_rmsd(std::span<const Vec3> mobile, std::span<const Vec3> reference) {
  const Vec3 cm = centroid(mobile), cr = centroid(reference);
  std::vector<Vec3> a, b;
  for (const auto& p : mobile) a.push_back(p - cm);
  for (const auto& p : reference) b.push_back(p - cr);
  auto msd = [&](const Eigen::Vector4d& q) {
    const Eigen::Matrix3d r = rotation_of(q);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (r * a[i] - b[i]).squaredNorm();
    return s / static_cast<double>(a.size());
  };
  Eigen::Vector4d best(1, 0, 0, 0);
  double fbest = msd(best);
  const int g = 6;
  for (int i = -g; i <= g; ++i)
    for (int j = -g; j <= g; ++j)
      for (int k = -g; k <= g; ++k)
        for (int l = 0; l <= g; ++l) {
          Eigen::Vector4d q(l, i, j, k);
          if (q.norm() == 0) continue;
          const double f = msd(q);
          if (f < fbest) {
            fbest = f;
            best = q.normalized();
          }
        }
  for (double step = 0.05; step > 1e-13;) {
    bool improved = false;
    for (int c = 0; c < 4; ++c)
      for (double s : {step, -step}) {
        Eigen::Vector4d q = best;
        q[c] += s;
        q.normalize();
        const double f = msd(q);
        if (f < fbest) {
          fbest = f;
          best = q;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return std::sqrt(std::max(fbest, 0.0));
}

std::vector<double> monte_carlo_sasa(std::span<const Vec3> centers, std::span<const double> radii,
                                     std::size_t points_per_sphere, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> area(centers.size(), 0.0);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    std::size_t exposed = 0;
    for (std::size_t s = 0; s < points_per_sphere; ++s) {
      const Vec3 u = Vec3(n01(rng), n01(rng), n01(rng)).normalized();
      const Vec3 p = centers[i] + radii[i] * u;
      bool buried = false;
      for (std::size_t j = 0; j < centers.size() && !buried; ++j)
        if (j != i && (p - centers[j]).squaredNorm() < radii[j] * radii[j]) buried = true;
      if (!buried) ++exposed;
    }
    area[i] = 4 * std::numbers::pi * radii[i] * radii[i] * static_cast<double>(exposed) / points_per_sphere;
  }
  return area;
}

double two_sphere_area(double r1, double r2, double d) {
  const double full = 4 * std::numbers::pi * (r1 * r1 + r2 * r2);
  if (d >= r1 + r2) return full;
  const double h1 = r1 - (d * d + r1 * r1 - r2 * r2) / (2 * d);
  const double h2 = r2 - (d * d + r2 * r2 - r1 * r1) / (2 * d);
  return full - 2 * std::numbers::pi * (r1 * h1 + r2 * h2);
}

std::size_t brute_force_hbonds(const conformetrics::Frame& frame, const std::vector<std::size_t>& selection,
                               const conformetrics::Topology& topology, const conformetrics::metrics::HBondCriteria& c,
                               bool intra_chain) {
  const std::size_t none = topology.size();
  std::vector<bool> in(topology.size(), false);
  for (auto i : selection) in[i] = true;
  std::size_t count = 0;
  for (auto h : selection) {
    if (topology[h].element != "H") continue;
    std::size_t donor = none;
    for (const auto& b : topology.bonds()) {
      const std::size_t other = b.i == h ? b.j : (b.j == h ? b.i : none);
      if (other != none && in[other] && polar(topology[other])) {
        donor = other;
        break;
      }
    }
    if (donor == none) {
      double best = std::numeric_limits<double>::infinity();
      for (auto d : selection) {
        if (!polar(topology[d])) continue;
        const double r = min_image(frame.positions[d] - frame.positions[h], frame.box).norm();
        if (r <= c.covalent_h_max && r < best) {
          best = r;
          donor = d;
        }
      }
    }
    if (donor == none) continue;
    const Vec3 hd = min_image(frame.positions[donor] - frame.positions[h], frame.box);
    for (auto a : selection) {
      if (a == donor || !polar(topology[a])) continue;
      if (intra_chain && topology[a].chain_id != topology[donor].chain_id) continue;
      const Vec3 da = min_image(frame.positions[a] - frame.positions[donor], frame.box);
      if (da.norm() > c.donor_acceptor_max) continue;
      const Vec3 ha = hd + da;
      const double cosang = std::clamp(hd.dot(ha) / (hd.norm() * ha.norm()), -1.0, 1.0);
      if (std::acos(cosang) * 180.0 / std::numbers::pi >= c.dha_angle_min) ++count;
    }
  }
  return count;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_pairs(const std::vector<Vec3>& x,
                                                                       const conformetrics::Box& box, double r) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (min_image(x[j] - x[i], box).norm() < r) out.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  return out;
}

std::vector<Vec3> shake(const std::vector<Vec3>& previous, std::vector<Vec3> updated,
                        const std::vector<conformetrics::sim::Constraint>& cons, const std::vector<double>& inv_mass,
                        double tol, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    double worst = 0;
    for (const auto& c : cons) {
      const Vec3 old = previous[c.i] - previous[c.j];
      const Vec3 now = updated[c.i] - updated[c.j];
      const double diff = now.squaredNorm() - c.length * c.length;
      worst = std::max(worst, std::abs(diff) / (c.length * c.length));
      const double g = diff / (2 * (inv_mass[c.i] + inv_mass[c.j]) * old.dot(now));
      updated[c.i] -= g * inv_mass[c.i] * old;
      updated[c.j] += g * inv_mass[c.j] * old;
    }
    if (worst < tol) return updated;
  }
  return updated;
}

std::vector<double> ar1_series(std::size_t n, double rho, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<double> x(n);
  double v = n01(rng);
  const double s = std::sqrt(1 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    v = rho * v + s * n01(rng);
    x[i] = v;
  }
  return x;
}

} // namespace oracle
