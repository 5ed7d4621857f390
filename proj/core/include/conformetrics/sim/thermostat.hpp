#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "conformetrics/box.hpp"

namespace conformetrics::sim {

struct CouplingGroup {
  std::vector<std::size_t> atoms;
  double dof = 0.0;
};

// Bussi stochastic velocity rescaling. Returns the new kinetic energy for a
// group holding `kinetic` with `dof` degrees of freedom and target kinetic
// energy `kinetic_ref` = dof*kB*T0/2. With `deterministic` the noise is
// switched off (R1 = 0, sum of squares = dof), leaving a first-order relaxation.
double vrescale_kinetic(double kinetic, double kinetic_ref, double dof, double tau_t, double dt, std::mt19937_64& rng,
                        bool deterministic = false);

class VRescaleThermostat {
public:
  VRescaleThermostat(std::vector<CouplingGroup> groups, double temperature, double tau_t);

  // Rescale velocities group by group. A group with zero kinetic energy is
  // redrawn from Maxwell-Boltzmann instead; resample_count() counts those.
  // Returns the per-group scale factors (1 for resampled groups).
  std::vector<double> apply(std::vector<Vec3>& velocities, const std::vector<double>& masses, double dt, std::mt19937_64& rng);

  const std::vector<CouplingGroup>& groups() const { return groups_; }
  double temperature() const { return t_ref_; }
  void set_temperature(double t) { t_ref_ = t; }
  std::size_t resample_count() const { return resampled_; }

  bool deterministic = false;

private:
  std::vector<CouplingGroup> groups_;
  double t_ref_;
  double tau_t_;
  std::size_t resampled_ = 0;
};

// Degrees of freedom of each group: 3 per atom, minus half a constraint per
// constrained atom end, minus the share of the 3 removed centre-of-mass
// degrees of freedom proportional to the group's atom count.
std::vector<double> group_dof(const std::vector<std::vector<std::size_t>>& groups, std::size_t natoms,
                              const std::vector<int>& constraints_per_atom, bool com_removed);

} // namespace conformetrics::sim
