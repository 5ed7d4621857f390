#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace conformetrics {

struct ElementData {
  double mass = 0.0;        // amu
  double vdw_radius = 0.0;  // nm, Bondi set
};

// Built-in element table (masses and Bondi van der Waals radii).
std::optional<ElementData> element_data(std::string_view symbol);

// Canonical capitalisation ("CL" -> "Cl", "c" -> "C").
std::string normalize_element(std::string_view symbol);

// Element for an atom name when the input file does not provide one.
//
// Ion names are resolved through a fixed override table when the residue name
// equals the atom name (e.g. NA/NA, CL/CL); otherwise the first alphabetic
// character of the atom name is used.
std::string element_from_atom_name(std::string_view atom_name, std::string_view residue_name);

// Element -> vdW radius table, nm. Starts from the Bondi set and can be
// overridden from an `element,radius_nm` CSV.
class RadiiTable {
public:
  static RadiiTable bondi();
  static RadiiTable from_csv(std::string_view text, const RadiiTable& base);

  std::optional<double> radius(std::string_view element) const;
  void set(const std::string& element, double radius_nm);
  const std::map<std::string, double>& entries() const { return radii_; }

private:
  std::map<std::string, double> radii_;
};

} // namespace conformetrics
