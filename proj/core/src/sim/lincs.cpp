#include "conformetrics/sim/lincs.hpp"

#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"

namespace conformetrics::sim {

Lincs::Lincs(std::vector<Constraint> constraints, std::vector<double> inverse_masses, LincsParams params)
    : cons_(std::move(constraints)), inv_mass_(std::move(inverse_masses)), params_(params) {
  if (params_.order < 0 || params_.iterations < 0) throw UsageError("lincs: order and iterations must be non-negative");
  const std::size_t n = cons_.size();
  s_.resize(n);
  std::vector<std::vector<std::size_t>> by_atom(inv_mass_.size());
  for (std::size_t c = 0; c < n; ++c) {
    const Constraint& k = cons_[c];
    if (k.i >= inv_mass_.size() || k.j >= inv_mass_.size() || k.i == k.j)
      throw UsageError(fmt::format("lincs: constraint {} has invalid atoms", c + 1));
    if (!(k.length > 0.0)) throw UsageError(fmt::format("lincs: constraint {} needs a positive length", c + 1));
    s_[c] = 1.0 / std::sqrt(inv_mass_[k.i] + inv_mass_[k.j]);
    by_atom[k.i].push_back(c);
    by_atom[k.j].push_back(c);
  }
  coupling_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (const std::size_t atom : {cons_[c].i, cons_[c].j}) {
      const double role_c = atom == cons_[c].i ? 1.0 : -1.0;
      for (std::size_t o : by_atom[atom]) {
        if (o == c) continue;
        const double role_o = atom == cons_[o].i ? 1.0 : -1.0;
        coupling_[c].push_back({o, atom, role_c * role_o});
      }
    }
  }
}

std::vector<int> Lincs::count_per_atom(std::size_t natoms) const {
  std::vector<int> out(natoms, 0);
  for (const auto& c : cons_) {
    ++out[c.i];
    ++out[c.j];
  }
  return out;
}

void Lincs::solve(const std::vector<Vec3>& dir, std::vector<double>& rhs, std::vector<double>& sol) const {
  const std::size_t n = cons_.size();
  sol = rhs;
  std::vector<double> next(n);
  for (int rec = 0; rec < params_.order; ++rec) {
    for (std::size_t c = 0; c < n; ++c) {
      double acc = 0.0;
      for (const Coupling& k : coupling_[c])
        acc -= k.sign * s_[c] * s_[k.other] * inv_mass_[k.atom] * dir[c].dot(dir[k.other]) * rhs[k.other];
      next[c] = acc;
    }
    rhs.swap(next);
    for (std::size_t c = 0; c < n; ++c) sol[c] += rhs[c];
  }
}

LincsResult Lincs::apply(const std::vector<Vec3>& previous, std::vector<Vec3>& updated, const Box& box) const {
  LincsResult res;
  const std::size_t n = cons_.size();
  if (n == 0) return res;
  std::vector<Vec3> dir(n);
  std::vector<double> old_len(n), total(n, 0.0), rhs(n), sol;
  for (std::size_t c = 0; c < n; ++c) {
    const Vec3 d = minimum_image(previous[cons_[c].i] - previous[cons_[c].j], box);
    old_len[c] = d.norm();
    if (!(old_len[c] > 0.0)) throw NumericError(fmt::format("lincs: constraint {} has zero length", c + 1));
    dir[c] = d / old_len[c];
  }

  auto correct = [&] {
    solve(dir, rhs, sol);
    for (std::size_t c = 0; c < n; ++c) {
      const Vec3 step = s_[c] * sol[c] * dir[c];
      updated[cons_[c].i] -= inv_mass_[cons_[c].i] * step;
      updated[cons_[c].j] += inv_mass_[cons_[c].j] * step;
      total[c] += sol[c];
    }
  };
  auto current = [&](std::size_t c) { return minimum_image(updated[cons_[c].i] - updated[cons_[c].j], box); };

  for (std::size_t c = 0; c < n; ++c) rhs[c] = s_[c] * (dir[c].dot(current(c)) - cons_[c].length);
  correct();

  for (int it = 0; it < params_.iterations; ++it) {
    for (std::size_t c = 0; c < n; ++c) {
      const double d = cons_[c].length;
      const double l2 = current(c).squaredNorm();
      const double p2 = 2.0 * d * d - l2;
      if (!(p2 > 0.0))
        throw NumericError(fmt::format("lincs: constraint {} ({}-{}) stretched beyond the correctable range", c + 1,
                                       cons_[c].i + 1, cons_[c].j + 1));
      rhs[c] = s_[c] * (d - std::sqrt(p2));
    }
    correct();
  }

  for (std::size_t c = 0; c < n; ++c) {
    const double dev = std::abs(current(c).norm() - cons_[c].length) / cons_[c].length;
    if (!std::isfinite(dev) || dev > 0.5)
      throw NumericError(fmt::format("lincs: expansion diverged on constraint {} ({}-{}), relative deviation {:.3g}", c + 1,
                                     cons_[c].i + 1, cons_[c].j + 1, dev));
    res.max_relative_deviation = std::max(res.max_relative_deviation, dev);
    // Force on i is -s*total*dir/dt^2; r_ij . F_i accumulated without the 1/dt^2.
    res.virial_dt2 -= s_[c] * total[c] * old_len[c];
  }
  return res;
}

std::vector<Constraint> bond_constraints(const Topology& topology, bool hydrogen_only) {
  std::vector<Constraint> out;
  for (const Bond& b : topology.bonds()) {
    if (hydrogen_only && topology[b.i].element != "H" && topology[b.j].element != "H") continue;
    out.push_back({b.i, b.j, b.length});
  }
  return out;
}

} // namespace conformetrics::sim
