#include "conformetrics/topology.hpp"

#include <algorithm>
#include <limits>

#include "conformetrics/error.hpp"

namespace conformetrics {

Topology::Topology(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  validate();
}

void Topology::validate() {
  int max_chain = -1;
  std::vector<bool> seen;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (a.index != i) throw FormatError("topology: atom ordinal " + std::to_string(a.index) + " at position " + std::to_string(i));
    if (!(a.mass > 0.0)) throw FormatError("topology: atom " + std::to_string(i) + " (" + a.name + ") has non-positive mass");
    if (a.chain_id < 0) throw FormatError("topology: negative chain id");
    if (a.chain_id >= static_cast<int>(seen.size())) seen.resize(a.chain_id + 1, false);
    seen[a.chain_id] = true;
    max_chain = std::max(max_chain, a.chain_id);
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
    throw FormatError("topology: chain ids are not contiguous from 0");
  chain_count_ = atoms_.empty() ? 0 : max_chain + 1;
  for (const Bond& b : bonds_) {
    if (b.i >= atoms_.size() || b.j >= atoms_.size() || b.i == b.j)
      throw FormatError("topology: bond (" + std::to_string(b.i) + "," + std::to_string(b.j) + ") out of range");
  }
}

Topology Topology::with_bonds(std::vector<Bond> bonds) const { return Topology(atoms_, std::move(bonds)); }

Topology Topology::with_charges(std::span<const double> charges) const {
  if (charges.size() != atoms_.size()) throw UsageError("with_charges: charge count mismatch");
  auto atoms = atoms_;
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].charge = charges[i];
  return Topology(std::move(atoms), bonds_);
}

std::vector<std::vector<std::size_t>> Topology::bonded_neighbors() const {
  std::vector<std::vector<std::size_t>> adj(atoms_.size());
  for (const Bond& b : bonds_) {
    adj[b.i].push_back(b.j);
    adj[b.j].push_back(b.i);
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

void validate_trajectory(const Trajectory& traj) {
  double last = -std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < traj.frames.size(); ++f) {
    const Frame& fr = traj.frames[f];
    if (fr.positions.size() != traj.topology.size())
      throw FormatError("frame " + std::to_string(f) + " has " + std::to_string(fr.positions.size()) +
                        " atoms, topology has " + std::to_string(traj.topology.size()));
    if (fr.time < last) throw FormatError("frame " + std::to_string(f) + ": time decreases");
    if (!fr.box.is_rectangular()) throw FormatError("frame " + std::to_string(f) + ": non-rectangular box");
    last = fr.time;
  }
}

} // namespace conformetrics
