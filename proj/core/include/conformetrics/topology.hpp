#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "conformetrics/box.hpp"

namespace conformetrics {

struct Atom {
  std::size_t index = 0;
  std::string name;         // e.g. "CA"
  std::string element;      // e.g. "C"
  double mass = 0.0;        // amu
  double charge = 0.0;      // e
  int residue_seq = 0;
  std::string residue_name;
  int chain_id = 0;
};

struct Bond {
  std::size_t i = 0;
  std::size_t j = 0;
  double length = 0.0;      // equilibrium length, nm
  double k = 0.0;           // harmonic force constant, kJ mol^-1 nm^-2
};

// Static per-atom catalogue. Immutable once validated.
class Topology {
public:
  Topology() = default;
  Topology(std::vector<Atom> atoms, std::vector<Bond> bonds);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::size_t size() const { return atoms_.size(); }
  int chain_count() const { return chain_count_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  // Same atoms, different bond list (bonds are often read from a separate file).
  Topology with_bonds(std::vector<Bond> bonds) const;
  // Same atoms with charges replaced.
  Topology with_charges(std::span<const double> charges) const;

  // Neighbour lists over the bond graph.
  std::vector<std::vector<std::size_t>> bonded_neighbors() const;

private:
  void validate();

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  int chain_count_ = 0;
};

struct Frame {
  double time = 0.0;                 // ps
  std::vector<Vec3> positions;       // nm
  Box box;
};

struct Trajectory {
  Topology topology;
  std::vector<Frame> frames;
};

// Throws FormatError if frames disagree with the topology or times decrease.
void validate_trajectory(const Trajectory& traj);

} // namespace conformetrics
