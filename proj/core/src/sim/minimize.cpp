#include "conformetrics/sim/minimize.hpp"

#include <cmath>

#include "conformetrics/error.hpp"
#include "conformetrics/sim/forces.hpp"

namespace conformetrics::sim {
namespace {

double max_force(const std::vector<Vec3>& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, v.norm());
  return m;
}

} // namespace

MinimizeResult steepest_descent(SimState& state, const ForceField& ff, NeighborList& nlist, const MinimizerParams& params,
                                const PositionRestraints* restraints, unsigned workers) {
  if (params.max_steps < 0 || !(params.fmax_tol > 0.0) || !(params.initial_step > 0.0))
    throw UsageError("minimizer: max_steps >= 0, fmax_tol > 0 and initial_step > 0 are required");
  MinimizeResult res;
  nlist.update(state, ff);
  double energy = compute_forces(state, ff, nlist, restraints, state.forces, workers).potential();
  state.check_finite("minimizer");
  if (!std::isfinite(energy)) throw NumericError("minimizer: initial energy is not finite");
  res.energies.push_back(energy);

  double h = params.initial_step;
  constexpr double kMinStep = 1e-14;
  SimState trial = state;
  std::vector<Vec3> trial_forces;
  while (true) {
    res.fmax = max_force(state.forces);
    if (res.fmax < params.fmax_tol) {
      res.converged = true;
      break;
    }
    if (res.steps >= params.max_steps) break;
    if (h < kMinStep) {
      res.stalled = true;
      break;
    }
    ++res.steps;
    const double scale = h / res.fmax;
    trial.positions = state.positions;
    trial.images = state.images;
    trial.box = state.box;
    for (std::size_t i = 0; i < state.size(); ++i) trial.positions[i] += scale * state.forces[i];
    trial.wrap();
    nlist.update(trial, ff);
    const double e = compute_forces(trial, ff, nlist, restraints, trial_forces, workers).potential();
    if (std::isfinite(e) && e < energy) {
      state.positions = trial.positions;
      state.images = trial.images;
      state.forces = trial_forces;
      energy = e;
      res.energies.push_back(e);
      h *= 1.2;
    } else {
      h *= 0.2;
    }
  }
  return res;
}

} // namespace conformetrics::sim
