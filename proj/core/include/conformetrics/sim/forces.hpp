#pragma once

#include <vector>

#include "conformetrics/sim/forcefield.hpp"
#include "conformetrics/sim/neighbor_list.hpp"
#include "conformetrics/sim/state.hpp"

namespace conformetrics::sim {

struct EnergyTerms {
  double lj = 0.0;
  double coulomb = 0.0;
  double bond = 0.0;
  double restraint = 0.0;
  double dispersion = 0.0;   // tail correction, constant at fixed N and V
  double virial = 0.0;       // sum over interactions of r_ij . F_ij, kJ/mol
  double dispersion_pressure = 0.0; // bar

  double potential() const { return lj + coulomb + bond + restraint + dispersion; }
};

// LJ 12-6 and Coulomb, both truncated at the cutoff and shifted to zero there,
// plus harmonic bonds and optional position restraints. Forces are the exact
// negative gradient of that potential. Pair work is split over `workers`
// threads, each with its own force buffer; buffers are summed in worker order.
// Throws NumericError when two atoms are closer than 1e-6 nm.
EnergyTerms compute_forces(const SimState& state, const ForceField& ff, const NeighborList& nlist,
                           const PositionRestraints* restraints, std::vector<Vec3>& forces, unsigned workers = 1);

// Potential energy only (same terms as compute_forces).
double potential_energy(const SimState& state, const ForceField& ff, const NeighborList& nlist,
                        const PositionRestraints* restraints);

} // namespace conformetrics::sim
