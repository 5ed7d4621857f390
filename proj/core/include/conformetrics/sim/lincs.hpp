#pragma once

#include <cstddef>
#include <vector>

#include "conformetrics/box.hpp"
#include "conformetrics/topology.hpp"

namespace conformetrics::sim {

struct Constraint {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;   // nm
};

struct LincsParams {
  int order = 4;
  int iterations = 1;
};

struct LincsResult {
  // sum over constraints of r_ij(old) . (m dx) ; divide by dt^2 for the constraint virial
  double virial_dt2 = 0.0;
  double max_relative_deviation = 0.0;   // after projection
};

// Linear constraint solver. Directions come from the previous (constraint-satisfying)
// positions; the inverse of the coupling matrix is replaced by a power series of
// `order` terms, followed by `iterations` rounds of the rotational length correction.
class Lincs {
public:
  Lincs(std::vector<Constraint> constraints, std::vector<double> inverse_masses, LincsParams params = {});

  const std::vector<Constraint>& constraints() const { return cons_; }
  const LincsParams& params() const { return params_; }
  std::size_t size() const { return cons_.size(); }
  // Constraints touching each atom, for degree-of-freedom counting.
  std::vector<int> count_per_atom(std::size_t natoms) const;

  // Projects `updated` in place. Throws NumericError when the expansion diverges.
  LincsResult apply(const std::vector<Vec3>& previous, std::vector<Vec3>& updated, const Box& box) const;

private:
  struct Coupling {
    std::size_t other;
    std::size_t atom;   // shared atom
    double sign;
  };
  void solve(const std::vector<Vec3>& dir, std::vector<double>& rhs, std::vector<double>& sol) const;

  std::vector<Constraint> cons_;
  std::vector<double> inv_mass_;
  LincsParams params_;
  std::vector<double> s_;     // 1 / sqrt(1/mi + 1/mj)
  std::vector<std::vector<Coupling>> coupling_;
};

// Constraints for bonds: all of them, or only those with a hydrogen atom.
std::vector<Constraint> bond_constraints(const Topology& topology, bool hydrogen_only);

} // namespace conformetrics::sim
