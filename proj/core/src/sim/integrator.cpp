#include "conformetrics/sim/integrator.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/sim/barostat.hpp"

namespace conformetrics::sim {

void leapfrog_step(SimState& state, const std::vector<double>& inverse_masses, double dt) {
  for (std::size_t i = 0; i < state.size(); ++i) {
    state.velocities[i] += dt * inverse_masses[i] * state.forces[i];
    state.positions[i] += dt * state.velocities[i];
  }
  state.wrap();
  state.time += dt;
  state.check_finite("leapfrog");
}

const char* to_string(BarostatType t) {
  switch (t) {
    case BarostatType::none: return "none";
    case BarostatType::berendsen: return "berendsen";
    case BarostatType::parrinello_rahman: return "parrinello-rahman";
  }
  return "?";
}

MdEngine::MdEngine(const ForceField& ff, SimState& state, NeighborList& nlist, MdOptions options, const Lincs* lincs,
                   const PositionRestraints* restraints)
    : ff_(ff), state_(state), nlist_(nlist), opt_(std::move(options)), lincs_(lincs) {
  if (!(opt_.dt > 0.0)) throw UsageError("md: dt must be positive");
  if (state_.size() != ff_.size()) throw UsageError("md: state and force field disagree on the atom count");
  if (restraints != nullptr) restraints_ = *restraints;
  if (opt_.barostat != BarostatType::none) {
    if (!state_.box.fully_periodic()) throw UsageError("md: pressure coupling needs a periodic box");
    if (!(opt_.tau_p > 0.0) || !(opt_.compressibility > 0.0)) throw UsageError("md: tau_p and compressibility must be positive");
  }

  std::vector<std::vector<std::size_t>> groups = opt_.coupling_groups;
  if (groups.empty()) {
    groups.emplace_back(state_.size());
    std::iota(groups.back().begin(), groups.back().end(), std::size_t{0});
  }
  const auto per_atom = lincs_ ? lincs_->count_per_atom(state_.size()) : std::vector<int>(state_.size(), 0);
  group_dof_ = group_dof(groups, state_.size(), per_atom, opt_.remove_com);
  dof_total_ = std::accumulate(group_dof_.begin(), group_dof_.end(), 0.0);
  if (opt_.thermostat) {
    std::vector<CouplingGroup> cg;
    for (std::size_t g = 0; g < groups.size(); ++g) cg.push_back({groups[g], group_dof_[g]});
    thermostat_ = std::make_unique<VRescaleThermostat>(std::move(cg), opt_.temperature, opt_.tau_t);
    thermostat_->deterministic = opt_.deterministic_thermostat;
  }
  t0_ = state_.time;
  nlist_.update(state_, ff_);
  evaluate_forces();
}

void MdEngine::evaluate_forces() {
  terms_ = compute_forces(state_, ff_, nlist_, restraints_ ? &*restraints_ : nullptr, state_.forces, opt_.workers);
  state_.check_finite("force evaluation");
}

StepRecord MdEngine::step() {
  const double dt = opt_.dt;
  const auto& masses = ff_.masses();
  const auto& inv_mass = ff_.inverse_masses();
  const std::size_t n = state_.size();

  StepRecord rec;
  rec.step = step_;
  rec.time = state_.time;
  rec.potential = terms_.potential();

  const double k_old = kinetic_energy(state_.velocities, masses);
  if (thermostat_) thermostat_->apply(state_.velocities, masses, dt, state_.rng);

  double friction = 0.0;
  if (opt_.barostat == BarostatType::parrinello_rahman) friction = dt * state_.box_velocity / state_.box.lengths()[0];

  const std::vector<Vec3> previous = state_.positions;
  std::vector<Vec3>& v = state_.velocities;
  std::vector<Vec3>& x = state_.positions;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = v[i] - friction * v[i] + dt * inv_mass[i] * state_.forces[i];
    x[i] = previous[i] + dt * v[i];
  }

  double virial = terms_.virial;
  if (lincs_ != nullptr && lincs_->size() > 0) {
    const LincsResult lr = lincs_->apply(previous, x, state_.box);
    for (std::size_t i = 0; i < n; ++i) v[i] = (x[i] - previous[i]) / dt;
    virial += lr.virial_dt2 / (dt * dt);
  }

  const double k_new = kinetic_energy(v, masses);
  rec.kinetic = 0.5 * (k_old + k_new);
  rec.temperature = temperature_kelvin(rec.kinetic, dof_total_);
  if (state_.box.fully_periodic())
    rec.pressure = pressure_bar(rec.kinetic, virial, state_.box.volume()) + terms_.dispersion_pressure;
  rec.box = state_.box.lengths();

  double mu = 1.0;
  if (opt_.barostat == BarostatType::berendsen) {
    const BerendsenScale b = berendsen_scale(opt_.ref_pressure, opt_.tau_p, opt_.compressibility, dt, rec.pressure);
    if (b.clamped) ++clamps_;
    mu = b.mu;
  } else if (opt_.barostat == BarostatType::parrinello_rahman) {
    const double l = state_.box.lengths()[0];
    state_.box_velocity += dt * parrinello_rahman_acceleration(l, opt_.ref_pressure, opt_.tau_p, opt_.compressibility, rec.pressure);
    if (!std::isfinite(state_.box_velocity) || std::abs(state_.box_velocity / l) * dt > 1e-2)
      throw NumericError(fmt::format("md: Parrinello-Rahman box velocity blew up ({:.4g} nm/ps at t={} ps, P={:.1f} bar)",
                                     state_.box_velocity, state_.time, rec.pressure));
    mu = (l + dt * state_.box_velocity) / l;
  }
  if (mu != 1.0) {
    state_.scale(mu);
    if (restraints_)
      for (auto& r : restraints_->reference) r *= mu;
  }

  if (opt_.remove_com) remove_com_motion(v, masses);
  state_.wrap();
  ++step_;
  ++local_steps_;
  state_.time = t0_ + static_cast<double>(local_steps_) * dt;

  nlist_.update(state_, ff_);
  evaluate_forces();
  return rec;
}

} // namespace conformetrics::sim
