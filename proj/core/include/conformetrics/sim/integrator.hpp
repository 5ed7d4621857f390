#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conformetrics/sim/forcefield.hpp"
#include "conformetrics/sim/forces.hpp"
#include "conformetrics/sim/lincs.hpp"
#include "conformetrics/sim/neighbor_list.hpp"
#include "conformetrics/sim/state.hpp"
#include "conformetrics/sim/thermostat.hpp"

namespace conformetrics::sim {

// Bare leapfrog update with current forces:
//   v(t+dt/2) = v(t-dt/2) + dt F/m,  x(t+dt) = x(t) + dt v(t+dt/2), then wrap.
void leapfrog_step(SimState& state, const std::vector<double>& inverse_masses, double dt);

enum class BarostatType { none, berendsen, parrinello_rahman };
const char* to_string(BarostatType t);

struct MdOptions {
  double dt = 0.002;                 // ps
  unsigned workers = 1;
  bool remove_com = true;

  bool thermostat = false;
  double temperature = 300.0;        // K
  double tau_t = 0.1;                // ps
  std::vector<std::vector<std::size_t>> coupling_groups;   // empty: one group of all atoms
  bool deterministic_thermostat = false;

  BarostatType barostat = BarostatType::none;
  double ref_pressure = 1.0;         // bar
  double tau_p = 1.0;                // ps
  double compressibility = 4.5e-5;   // 1/bar
};

struct StepRecord {
  long step = 0;
  double time = 0.0;        // ps, time of the positions the energies refer to
  double potential = 0.0;   // kJ/mol
  double kinetic = 0.0;     // average of the two half-step kinetic energies
  double temperature = 0.0; // K
  double pressure = 0.0;    // bar
  Vec3 box = Vec3::Zero();
  double total() const { return potential + kinetic; }
};

// Leapfrog molecular dynamics with optional v-rescale coupling, Berendsen or
// isotropic Parrinello-Rahman pressure coupling and LINCS constraints.
//
// Step order: thermostat factor from the t-dt/2 kinetic energy, velocity update
// (plus the box friction term under Parrinello-Rahman), drift, constraint
// projection, pressure at t, box update, centre-of-mass removal, wrap, new forces.
class MdEngine {
public:
  MdEngine(const ForceField& ff, SimState& state, NeighborList& nlist, MdOptions options,
           const Lincs* lincs = nullptr, const PositionRestraints* restraints = nullptr);

  StepRecord step();

  const EnergyTerms& energies() const { return terms_; }
  double degrees_of_freedom() const { return dof_total_; }
  const std::vector<double>& group_dofs() const { return group_dof_; }
  long steps_done() const { return step_; }
  void set_step_counter(long s) { step_ = s; }
  std::size_t clamp_count() const { return clamps_; }
  std::size_t resample_count() const { return thermostat_ ? thermostat_->resample_count() : 0; }
  const MdOptions& options() const { return opt_; }

private:
  void evaluate_forces();

  const ForceField& ff_;
  SimState& state_;
  NeighborList& nlist_;
  MdOptions opt_;
  const Lincs* lincs_;
  std::optional<PositionRestraints> restraints_;
  std::unique_ptr<VRescaleThermostat> thermostat_;
  std::vector<double> group_dof_;
  double dof_total_ = 0.0;
  EnergyTerms terms_;
  long step_ = 0;
  long local_steps_ = 0;
  double t0_ = 0.0;
  std::size_t clamps_ = 0;
};

} // namespace conformetrics::sim
