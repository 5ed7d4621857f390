#pragma once

#include <string>
#include <string_view>

#include "conformetrics/topology.hpp"

namespace conformetrics::trajio {

// Fixed-column GRO. Multiple concatenated frames are accepted; the topology is
// taken from the first frame. Chains start wherever residue numbering restarts.
Trajectory parse_gro(std::string_view text);
std::string write_gro(const Trajectory& traj, std::string_view title = "conformetrics");

// ATOM/HETATM records with optional MODEL/ENDMDL framing. Coordinates are read
// in angstrom and stored in nm. Chains are delimited by TER records or chain-ID
// changes. Element comes from columns 77-78, falling back to the atom name.
Trajectory parse_pdb_multimodel(std::string_view text);
std::string write_pdb(const Trajectory& traj);

// Explicit bond list, CSV `i,j,length_nm,k` with 0-based atom ordinals.
std::vector<Bond> parse_bonds_csv(std::string_view text, std::size_t natoms);
std::string write_bonds_csv(const std::vector<Bond>& bonds);

} // namespace conformetrics::trajio
