#include "conformetrics/elements.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

#include "conformetrics/error.hpp"

namespace conformetrics {
namespace {

struct ElementRow {
  std::string_view symbol;
  double mass;
  double radius;
};

// Bondi (1964) radii in nm; elements Bondi does not list use 0.2 nm.
constexpr std::array<ElementRow, 15> kElements{{
    {"H", 1.008, 0.120},
    {"C", 12.011, 0.170},
    {"N", 14.007, 0.155},
    {"O", 15.999, 0.152},
    {"F", 18.998, 0.147},
    {"Na", 22.990, 0.227},
    {"Mg", 24.305, 0.173},
    {"P", 30.974, 0.180},
    {"S", 32.06, 0.180},
    {"Cl", 35.45, 0.175},
    {"K", 39.098, 0.275},
    {"Ar", 39.948, 0.188},
    {"Zn", 65.38, 0.139},
    {"Br", 79.904, 0.185},
    {"I", 126.904, 0.198},
}};

struct IonRow {
  std::string_view name;
  std::string_view element;
};

constexpr std::array<IonRow, 8> kIonOverrides{{
    {"NA", "Na"}, {"CL", "Cl"}, {"K", "K"}, {"MG", "Mg"},
    {"ZN", "Zn"}, {"CA", "Ca"}, {"BR", "Br"}, {"AR", "Ar"},
}};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

} // namespace

std::string normalize_element(std::string_view symbol) {
  std::string s = trim(symbol);
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = static_cast<char>(i == 0 ? std::toupper(static_cast<unsigned char>(s[i]))
                                    : std::tolower(static_cast<unsigned char>(s[i])));
  return s;
}

std::optional<ElementData> element_data(std::string_view symbol) {
  const std::string norm = normalize_element(symbol);
  for (const auto& row : kElements)
    if (row.symbol == norm) return ElementData{row.mass, row.radius};
  if (norm == "Ca") return ElementData{40.078, 0.231};
  return std::nullopt;
}

std::string element_from_atom_name(std::string_view atom_name, std::string_view residue_name) {
  const std::string name = trim(atom_name);
  const std::string res = trim(residue_name);
  if (name == res) {
    for (const auto& ion : kIonOverrides)
      if (ion.name == name) return std::string(ion.element);
  }
  for (char c : name)
    if (std::isalpha(static_cast<unsigned char>(c)))
      return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return {};
}

RadiiTable RadiiTable::bondi() {
  RadiiTable t;
  for (const auto& row : kElements) t.radii_[std::string(row.symbol)] = row.radius;
  t.radii_["Ca"] = 0.231;
  return t;
}

RadiiTable RadiiTable::from_csv(std::string_view text, const RadiiTable& base) {
  RadiiTable t = base;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string l = trim(line);
    if (l.empty() || l[0] == '#') continue;
    const auto comma = l.find(',');
    if (comma == std::string::npos)
      throw FormatError("radii file line " + std::to_string(lineno) + ": expected element,radius_nm");
    const std::string element = normalize_element(l.substr(0, comma));
    const std::string value = trim(l.substr(comma + 1));
    if (element == "Element") continue; // header
    double r = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), r);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size() || !(r > 0.0))
      throw FormatError("radii file line " + std::to_string(lineno) + ": bad radius '" + value + "'");
    t.radii_[element] = r;
  }
  return t;
}

std::optional<double> RadiiTable::radius(std::string_view element) const {
  const auto it = radii_.find(normalize_element(element));
  if (it == radii_.end()) return std::nullopt;
  return it->second;
}

void RadiiTable::set(const std::string& element, double radius_nm) {
  radii_[normalize_element(element)] = radius_nm;
}

} // namespace conformetrics
