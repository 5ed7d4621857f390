#pragma once

#include <cstdint>
#include <string>

#include "conformetrics/sim/config.hpp"
#include "conformetrics/topology.hpp"

namespace conformetrics::sim {

struct ToySystem {
  Topology topology;   // with bonds and charges
  Frame frame;
};

// Peptide-like bead chains: each residue (GLN) carries N, H, CA, C, O with harmonic
// bonds N-H, N-CA, CA-C, C-O and C-N(next) and partial charges. Chains start as
// jittered zig-zags spaced across a cubic periodic box. With a positive
// `solvent_density` (nm^-3) the rest of the box is filled with single-site LJ
// solvent (atom OW, residue SOL, one extra chain) on a cubic lattice.
ToySystem build_toy_chains(int chains, int residues, double box_nm, std::uint64_t seed, double solvent_density = 24.0);

// LJ and charge parameters matching build_toy_chains, plus a protocol of
// minimize, restrained NVT, Berendsen NPT and Parrinello-Rahman production.
std::string toy_config_text(const std::string& bonds_file, std::uint64_t seed, double production_ps, int stride);

// Monatomic Lennard-Jones fluid on an fcc lattice: 4*cells^3 atoms of `element`
// at number density `density` (nm^-3) in a cubic periodic box.
ToySystem build_lj_fluid(int cells, double density, const std::string& element = "Ar");

// Argon-like LJ parameters (epsilon 0.996 kJ/mol, sigma 0.34 nm).
ForceFieldParams argon_forcefield(double cutoff);

} // namespace conformetrics::sim
