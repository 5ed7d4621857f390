#include "conformetrics/sim/forces.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"
#include "conformetrics/units.hpp"

namespace conformetrics::sim {
namespace {

constexpr double kOverlap = 1e-6;

struct Partial {
  double lj = 0.0, coulomb = 0.0, virial = 0.0;
  std::vector<Vec3> f;
};

void pair_range(const SimState& s, const ForceField& ff, const PairList& pairs, std::size_t begin, std::size_t end,
                Partial& out) {
  const double rc2 = ff.params().cutoff * ff.params().cutoff;
  const double kc = ff.params().coulomb_constant;
  const double inv_rc = 1.0 / ff.params().cutoff;
  if (!s.box.is_rectangular()) throw UsageError("forces: only rectangular boxes are supported");
  const Vec3 len = s.box.lengths();
  for (std::size_t p = begin; p < end; ++p) {
    const auto [i, j] = pairs[p];
    Vec3 d = s.positions[i] - s.positions[j];
    for (int k = 0; k < 3; ++k) d[k] = minimum_image_component(d[k], len[k]);
    const double r2 = d.squaredNorm();
    if (r2 >= rc2) continue;
    if (r2 < kOverlap * kOverlap)
      throw NumericError(fmt::format("forces: atoms {} and {} overlap (r = {:.3g} nm)", i + 1, j + 1, std::sqrt(r2)));
    const double ir2 = 1.0 / r2;
    const PairCoefficients& c = ff.pair(ff.type(i), ff.type(j));
    const double ir6 = ir2 * ir2 * ir2;
    const double vlj = c.c12 * ir6 * ir6 - c.c6 * ir6;
    // f_over_r * d is the force on i.
    double f_over_r = (12.0 * c.c12 * ir6 * ir6 - 6.0 * c.c6 * ir6) * ir2;
    out.lj += vlj - c.shift;
    const double qq = ff.charge(i) * ff.charge(j);
    if (qq != 0.0) {
      const double ir = std::sqrt(ir2);
      out.coulomb += kc * qq * (ir - inv_rc);
      f_over_r += kc * qq * ir * ir2;
    }
    const Vec3 f = f_over_r * d;
    out.f[i] += f;
    out.f[j] -= f;
    out.virial += f_over_r * r2;
  }
}

} // namespace

EnergyTerms compute_forces(const SimState& state, const ForceField& ff, const NeighborList& nlist,
                           const PositionRestraints* restraints, std::vector<Vec3>& forces, unsigned workers) {
  const std::size_t n = state.size();
  forces.assign(n, Vec3::Zero());
  EnergyTerms e;

  const PairList& pairs = nlist.pairs();
  workers = std::max(1u, workers);
  std::vector<Partial> parts(workers);
  for (auto& p : parts) p.f.assign(n, Vec3::Zero());
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t begin = pairs.size() * w / workers;
    const std::size_t end = pairs.size() * (w + 1) / workers;
    pair_range(state, ff, pairs, begin, end, parts[w]);
  });
  for (const auto& p : parts) {
    e.lj += p.lj;
    e.coulomb += p.coulomb;
    e.virial += p.virial;
    for (std::size_t i = 0; i < n; ++i) forces[i] += p.f[i];
  }

  for (const Bond& b : ff.bonds()) {
    const Vec3 d = minimum_image(state.positions[b.i] - state.positions[b.j], state.box);
    const double r = d.norm();
    if (r < kOverlap) throw NumericError(fmt::format("forces: bonded atoms {} and {} overlap", b.i + 1, b.j + 1));
    const double dr = r - b.length;
    e.bond += 0.5 * b.k * dr * dr;
    const double f_over_r = -b.k * dr / r;
    forces[b.i] += f_over_r * d;
    forces[b.j] -= f_over_r * d;
    e.virial += f_over_r * r * r;
  }

  if (restraints != nullptr) {
    for (std::size_t k = 0; k < restraints->atoms.size(); ++k) {
      const std::size_t i = restraints->atoms[k];
      const Vec3 d = minimum_image(state.positions[i] - restraints->reference[k], state.box);
      e.restraint += 0.5 * restraints->k * d.squaredNorm();
      const Vec3 f = -restraints->k * d;
      forces[i] += f;
      e.virial += d.dot(f);
    }
  }

  if (ff.params().dispersion_correction && state.box.fully_periodic()) {
    const double v = state.box.volume();
    const double rc3 = std::pow(ff.params().cutoff, 3);
    const double nn = static_cast<double>(n);
    e.dispersion = -2.0 / 3.0 * std::numbers::pi * nn * nn / v * ff.mean_c6() / rc3;
    e.dispersion_pressure = units::pressure_to_bar * (-4.0 / 3.0 * std::numbers::pi * (nn / v) * (nn / v) * ff.mean_c6() / rc3);
  }
  return e;
}

double potential_energy(const SimState& state, const ForceField& ff, const NeighborList& nlist,
                        const PositionRestraints* restraints) {
  std::vector<Vec3> scratch;
  return compute_forces(state, ff, nlist, restraints, scratch, 1).potential();
}

} // namespace conformetrics::sim
