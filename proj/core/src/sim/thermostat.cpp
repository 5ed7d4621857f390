#include "conformetrics/sim/thermostat.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/sim/state.hpp"
#include "conformetrics/units.hpp"

namespace conformetrics::sim {

double vrescale_kinetic(double kinetic, double kinetic_ref, double dof, double tau_t, double dt, std::mt19937_64& rng,
                        bool deterministic) {
  const double c = std::isinf(tau_t) ? 1.0 : std::exp(-dt / tau_t);
  double r1 = 0.0;
  double sumsq = dof;
  if (!deterministic) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    r1 = gauss(rng);
    double rest = 0.0;
    if (dof > 1.0) {
      std::gamma_distribution<double> gamma(0.5 * (dof - 1.0), 2.0);
      rest = gamma(rng);
    }
    sumsq = r1 * r1 + rest;
  }
  return kinetic + (1.0 - c) * (kinetic_ref * sumsq / dof - kinetic) +
         2.0 * r1 * std::sqrt(kinetic_ref / dof * kinetic * (1.0 - c) * c);
}

VRescaleThermostat::VRescaleThermostat(std::vector<CouplingGroup> groups, double temperature, double tau_t)
    : groups_(std::move(groups)), t_ref_(temperature), tau_t_(tau_t) {
  if (!(tau_t > 0.0)) throw UsageError("thermostat: tau_t must be positive");
  if (!(temperature >= 0.0)) throw UsageError("thermostat: temperature must be non-negative");
  for (std::size_t g = 0; g < groups_.size(); ++g)
    if (!(groups_[g].dof >= 1.0))
      throw UsageError(fmt::format("thermostat: coupling group {} has fewer than one degree of freedom", g + 1));
}

std::vector<double> VRescaleThermostat::apply(std::vector<Vec3>& velocities, const std::vector<double>& masses, double dt,
                                              std::mt19937_64& rng) {
  std::vector<double> lambdas(groups_.size(), 1.0);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const CouplingGroup& grp = groups_[g];
    double k = 0.0;
    for (std::size_t i : grp.atoms) k += 0.5 * masses[i] * velocities[i].squaredNorm();
    const double kref = 0.5 * grp.dof * units::boltzmann * t_ref_;
    if (!(k > 0.0)) {
      if (std::isinf(tau_t_)) continue;
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (std::size_t i : grp.atoms) {
        const double s = std::sqrt(units::boltzmann * t_ref_ / masses[i]);
        for (int d = 0; d < 3; ++d) velocities[i][d] = s * gauss(rng);
      }
      ++resampled_;
      continue;
    }
    const double knew = vrescale_kinetic(k, kref, grp.dof, tau_t_, dt, rng, deterministic);
    const double lambda = std::sqrt(std::max(knew, 0.0) / k);
    for (std::size_t i : grp.atoms) velocities[i] *= lambda;
    lambdas[g] = lambda;
  }
  return lambdas;
}

std::vector<double> group_dof(const std::vector<std::vector<std::size_t>>& groups, std::size_t natoms,
                              const std::vector<int>& constraints_per_atom, bool com_removed) {
  std::vector<double> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    double dof = 3.0 * static_cast<double>(g.size());
    for (std::size_t i : g)
      if (i < constraints_per_atom.size()) dof -= 0.5 * constraints_per_atom[i];
    if (com_removed && natoms > 0) dof -= 3.0 * static_cast<double>(g.size()) / static_cast<double>(natoms);
    out.push_back(dof);
  }
  return out;
}

} // namespace conformetrics::sim
