#pragma once

#include <vector>

#include "conformetrics/sim/forcefield.hpp"
#include "conformetrics/sim/neighbor_list.hpp"
#include "conformetrics/sim/state.hpp"

namespace conformetrics::sim {

struct MinimizerParams {
  int max_steps = 5000;
  double fmax_tol = 1000.0;     // kJ mol^-1 nm^-1
  double initial_step = 0.01;   // nm
};

struct MinimizeResult {
  std::vector<double> energies;   // accepted energies, starting with the initial one
  int steps = 0;                  // trial steps taken
  double fmax = 0.0;
  bool converged = false;         // fmax < fmax_tol
  bool stalled = false;           // step size underflow before reaching the tolerance
  double final_energy() const { return energies.back(); }
};

// Steepest descent: trial x + h F/max|F|; accept and grow h by 1.2 when the energy
// drops, otherwise shrink h by 0.2. Velocities are left untouched.
MinimizeResult steepest_descent(SimState& state, const ForceField& ff, NeighborList& nlist, const MinimizerParams& params,
                                const PositionRestraints* restraints = nullptr,
                                unsigned workers = 1);

} // namespace conformetrics::sim
