#include "conformetrics/sim/forcefield.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"

namespace conformetrics::sim {

ForceField::ForceField(const Topology& topology, ForceFieldParams params) : params_(std::move(params)) {
  const std::size_t n = topology.size();
  if (!(params_.cutoff > 0.0)) throw UsageError("force field: cutoff must be positive");
  std::map<std::string, int> index;
  std::vector<LjSpecies> types;
  double max_sigma = 0.0;
  for (const auto& [name, sp] : params_.species) {
    if (!(sp.epsilon >= 0.0)) throw UsageError(fmt::format("force field: species '{}' has negative epsilon", name));
    if (!(sp.sigma > 0.0)) throw UsageError(fmt::format("force field: species '{}' needs sigma > 0", name));
    max_sigma = std::max(max_sigma, sp.sigma);
  }
  if (!(params_.cutoff > max_sigma)) throw UsageError("force field: cutoff must exceed every sigma");

  type_.resize(n);
  charge_.resize(n);
  mass_.resize(n);
  inv_mass_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = topology[i];
    auto it = params_.species.find(a.name);
    if (it == params_.species.end()) it = params_.species.find(a.element);
    if (it == params_.species.end())
      throw UsageError(fmt::format("force field: no LJ parameters for atom name '{}' or element '{}' (atom {})", a.name, a.element, i + 1));
    auto [slot, inserted] = index.emplace(it->first, static_cast<int>(types.size()));
    if (inserted) types.push_back(it->second);
    type_[i] = slot->second;
    charge_[i] = a.charge;
    mass_[i] = a.mass;
    inv_mass_[i] = 1.0 / a.mass;
  }
  ntypes_ = types.size();
  table_.resize(ntypes_ * ntypes_);
  const double rc = params_.cutoff;
  for (std::size_t a = 0; a < ntypes_; ++a)
    for (std::size_t b = 0; b < ntypes_; ++b) {
      const double eps = std::sqrt(types[a].epsilon * types[b].epsilon);
      const double sig = 0.5 * (types[a].sigma + types[b].sigma);
      PairCoefficients& p = table_[a * ntypes_ + b];
      const double s6 = std::pow(sig, 6);
      p.c6 = 4.0 * eps * s6;
      p.c12 = 4.0 * eps * s6 * s6;
      const double ir6 = 1.0 / std::pow(rc, 6);
      p.shift = p.c12 * ir6 * ir6 - p.c6 * ir6;
    }

  // Mean C6 over all distinct atom pairs.
  if (n > 1) {
    std::vector<double> count(ntypes_, 0.0);
    for (int t : type_) count[static_cast<std::size_t>(t)] += 1.0;
    double acc = 0.0;
    for (std::size_t a = 0; a < ntypes_; ++a)
      for (std::size_t b = 0; b < ntypes_; ++b) {
        const double pairs = a == b ? count[a] * (count[a] - 1.0) : count[a] * count[b];
        acc += pairs * table_[a * ntypes_ + b].c6;
      }
    mean_c6_ = acc / (static_cast<double>(n) * static_cast<double>(n - 1));
  }

  bonds_ = topology.bonds();

  // Exclusions: atoms within `exclusion_bonds` bonds of each other.
  exclusions_.assign(n, {});
  const auto adj = topology.bonded_neighbors();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> frontier{i}, seen{i};
    for (int depth = 0; depth < params_.exclusion_bonds; ++depth) {
      std::vector<std::size_t> next;
      for (std::size_t a : frontier)
        for (std::size_t b : adj[a])
          if (std::find(seen.begin(), seen.end(), b) == seen.end()) {
            seen.push_back(b);
            next.push_back(b);
          }
      frontier = std::move(next);
    }
    for (std::size_t j : seen)
      if (j != i) exclusions_[i].push_back(j);
    std::sort(exclusions_[i].begin(), exclusions_[i].end());
  }
}

bool ForceField::excluded(std::size_t i, std::size_t j) const {
  const auto& ex = exclusions_[i];
  return std::binary_search(ex.begin(), ex.end(), j);
}

} // namespace conformetrics::sim
