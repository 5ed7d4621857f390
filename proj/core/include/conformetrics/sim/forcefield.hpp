#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conformetrics/topology.hpp"
#include "conformetrics/units.hpp"

namespace conformetrics::sim {

struct LjSpecies {
  double epsilon = 0.0; // kJ/mol
  double sigma = 0.0;   // nm
};

// Non-bonded parameters. Species are keyed by atom name or element symbol; an
// atom takes the entry matching its name if there is one, else its element. Pairs mix with
// the geometric mean for epsilon and the arithmetic mean for sigma.
struct ForceFieldParams {
  std::map<std::string, LjSpecies> species;
  double cutoff = 1.4;                                  // nm, LJ and Coulomb
  double coulomb_constant = units::coulomb_constant;    // kJ mol^-1 nm e^-2
  bool dispersion_correction = true;                    // homogeneous -C6/r^6 tail beyond the cutoff
  int exclusion_bonds = 2;                              // exclude pairs up to this many bonds apart (1-2, 1-3)
};

struct PairCoefficients {
  double c6 = 0.0;      // 4 eps sigma^6
  double c12 = 0.0;     // 4 eps sigma^12
  double shift = 0.0;   // LJ energy at the cutoff
};

// Topology-bound force field: per-atom types, charges, harmonic bonds and exclusions.
class ForceField {
public:
  ForceField(const Topology& topology, ForceFieldParams params);

  const ForceFieldParams& params() const { return params_; }
  std::size_t size() const { return type_.size(); }
  int type(std::size_t atom) const { return type_[atom]; }
  const PairCoefficients& pair(int ti, int tj) const { return table_[static_cast<std::size_t>(ti) * ntypes_ + tj]; }
  double charge(std::size_t atom) const { return charge_[atom]; }
  const std::vector<double>& masses() const { return mass_; }
  const std::vector<double>& inverse_masses() const { return inv_mass_; }
  double coulomb_shift() const { return 1.0 / params_.cutoff; }

  // Harmonic bond terms (bonds handled by constraints are removed by the caller).
  const std::vector<Bond>& bonds() const { return bonds_; }
  void set_bonds(std::vector<Bond> bonds) { bonds_ = std::move(bonds); }

  bool excluded(std::size_t i, std::size_t j) const;
  const std::vector<std::vector<std::size_t>>& exclusions() const { return exclusions_; }

  // Mean of c6 over all atom pairs, used by the dispersion correction.
  double mean_c6() const { return mean_c6_; }

private:
  ForceFieldParams params_;
  std::size_t ntypes_ = 0;
  std::vector<int> type_;
  std::vector<PairCoefficients> table_;
  std::vector<double> charge_;
  std::vector<double> mass_;
  std::vector<double> inv_mass_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::size_t>> exclusions_;
  double mean_c6_ = 0.0;
};

// Harmonic tethers to reference coordinates.
struct PositionRestraints {
  std::vector<std::size_t> atoms;
  std::vector<Vec3> reference;   // parallel to atoms, nm
  double k = 0.0;                // kJ mol^-1 nm^-2
};

} // namespace conformetrics::sim
