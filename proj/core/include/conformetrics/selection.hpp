#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "conformetrics/topology.hpp"

namespace conformetrics {

// Resolved atom subset. Indices are sorted, unique and non-empty.
struct Selection {
  std::vector<std::size_t> indices;
  std::string label;

  std::size_t size() const { return indices.size(); }
};

// Evaluate a selection expression against a topology.
//
// Grammar (keywords are case-insensitive):
//
//   expr    := or
//   or      := and { "or" and }
//   and     := unary { "and" unary }
//   unary   := "not" unary | primary
//   primary := "(" expr ")" | term
//   term    := "all" | "protein" | "backbone" | "calpha"
//            | "chain" INT | "resid" INT [ "-" INT ]
//            | "resname" WORD | "name" WORD | "element" WORD
//
// `protein` is every atom of a standard amino-acid residue name (plus common
// protonation variants and ACE/NME caps). `backbone` is the atoms named N, CA
// and C (carbonyl O is excluded). Chains are numbered from 0.
// Throws SelectionSyntaxError on malformed input and UsageError when nothing matches.
Selection select(const Topology& topology, std::string_view query);

// Selection covering every atom of the topology.
Selection select_all(const Topology& topology);

Vec3 center_of_mass(const Frame& frame, const Selection& sel, const Topology& topology);

} // namespace conformetrics
