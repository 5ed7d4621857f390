#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "conformetrics/elements.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/trajio/structure.hpp"
#include "text_util.hpp"

namespace conformetrics::trajio {
namespace {

std::string_view column(std::string_view line, std::size_t first, std::size_t last) {
  // 1-based inclusive PDB columns; missing trailing columns read as empty.
  if (line.size() < first) return {};
  return line.substr(first - 1, std::min(last, line.size()) - first + 1);
}

bool starts_with(std::string_view line, std::string_view tag) { return line.substr(0, tag.size()) == tag; }

struct PdbAtom {
  std::string name, resname, element;
  char chain = ' ';
  int resseq = 0;
  Vec3 x;
};

PdbAtom parse_atom_record(std::string_view line, std::size_t lineno) {
  PdbAtom a;
  a.name = detail::trim(column(line, 13, 16));
  a.resname = detail::trim(column(line, 18, 20));
  const auto chain = column(line, 22, 22);
  a.chain = chain.empty() ? ' ' : chain[0];
  const auto rs = detail::parse_int(column(line, 23, 26));
  if (!rs) throw FormatError(fmt::format("PDB line {}: bad residue number '{}'", lineno, column(line, 23, 26)));
  a.resseq = *rs;
  for (int k = 0; k < 3; ++k) {
    const auto field = column(line, 31 + 8 * k, 38 + 8 * k);
    const auto v = detail::parse_double(field);
    if (!v || !std::isfinite(*v)) throw FormatError(fmt::format("PDB line {}: unparseable coordinate '{}'", lineno, field));
    a.x[k] = *v / 10.0;
  }
  a.element = normalize_element(column(line, 77, 78));
  if (a.element.empty()) a.element = element_from_atom_name(a.name, a.resname);
  return a;
}

Box parse_cryst1(std::string_view line, std::size_t lineno) {
  double v[6];
  const std::size_t cols[6][2] = {{7, 15}, {16, 24}, {25, 33}, {34, 40}, {41, 47}, {48, 54}};
  for (int k = 0; k < 6; ++k) {
    const auto d = detail::parse_double(column(line, cols[k][0], cols[k][1]));
    if (!d) throw FormatError(fmt::format("PDB line {}: malformed CRYST1 record", lineno));
    v[k] = *d;
  }
  for (int k = 3; k < 6; ++k)
    if (std::abs(v[k] - 90.0) > 1e-3) throw FormatError(fmt::format("PDB line {}: triclinic cells are not supported", lineno));
  return Box::rectangular(v[0] / 10.0, v[1] / 10.0, v[2] / 10.0);
}

} // namespace

Trajectory parse_pdb_multimodel(std::string_view text) {
  const auto lines = detail::split_lines(text);
  Box box;
  std::vector<std::vector<PdbAtom>> models;
  std::vector<std::vector<bool>> ter_after; // TER seen after atom k of a model
  bool in_model = false;
  bool any_model_record = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string_view line = lines[li];
    if (starts_with(line, "CRYST1")) {
      box = parse_cryst1(line, li + 1);
    } else if (starts_with(line, "MODEL")) {
      any_model_record = true;
      models.emplace_back();
      ter_after.emplace_back();
      in_model = true;
    } else if (starts_with(line, "ENDMDL")) {
      in_model = false;
    } else if (starts_with(line, "ATOM  ") || starts_with(line, "HETATM")) {
      if (!in_model) {
        if (any_model_record) throw FormatError(fmt::format("PDB line {}: ATOM record outside MODEL/ENDMDL", li + 1));
        if (models.empty()) {
          models.emplace_back();
          ter_after.emplace_back();
        }
      }
      models.back().push_back(parse_atom_record(line, li + 1));
      ter_after.back().push_back(false);
    } else if (starts_with(line, "TER")) {
      if (!ter_after.empty() && !ter_after.back().empty()) ter_after.back().back() = true;
    }
  }
  if (models.empty() || models[0].empty()) throw FormatError("PDB: no ATOM/HETATM records");
  const std::size_t natoms = models[0].size();
  for (std::size_t m = 1; m < models.size(); ++m)
    if (models[m].size() != natoms)
      throw FormatError(fmt::format("PDB: MODEL {} has {} atoms, first model has {}", m + 1, models[m].size(), natoms));

  std::vector<Atom> atoms;
  atoms.reserve(natoms);
  int chain = 0;
  for (std::size_t a = 0; a < natoms; ++a) {
    const PdbAtom& p = models[0][a];
    if (a > 0 && (ter_after[0][a - 1] || p.chain != models[0][a - 1].chain)) ++chain;
    Atom atom;
    atom.index = a;
    atom.name = p.name;
    atom.residue_name = p.resname;
    atom.residue_seq = p.resseq;
    atom.chain_id = chain;
    atom.element = p.element;
    const auto data = element_data(atom.element);
    if (!data) throw FormatError(fmt::format("PDB: unknown element '{}' for atom {} '{}'", atom.element, a + 1, p.name));
    atom.mass = data->mass;
    atoms.push_back(std::move(atom));
  }

  Trajectory traj;
  traj.topology = Topology(std::move(atoms), {});
  for (std::size_t m = 0; m < models.size(); ++m) {
    Frame fr;
    fr.time = static_cast<double>(m);
    fr.box = box;
    fr.positions.reserve(natoms);
    for (const PdbAtom& p : models[m]) fr.positions.push_back(p.x);
    traj.frames.push_back(std::move(fr));
  }
  validate_trajectory(traj);
  return traj;
}

std::string write_pdb(const Trajectory& traj) {
  std::string out;
  const auto& atoms = traj.topology.atoms();
  if (!traj.frames.empty() && traj.frames[0].box.fully_periodic()) {
    const Vec3 l = traj.frames[0].box.lengths() * 10.0;
    out += fmt::format("CRYST1{:9.3f}{:9.3f}{:9.3f}{:7.2f}{:7.2f}{:7.2f} P 1           1\n", l[0], l[1], l[2], 90.0, 90.0, 90.0);
  }
  for (std::size_t m = 0; m < traj.frames.size(); ++m) {
    out += fmt::format("MODEL     {:4d}\n", m + 1);
    const Frame& fr = traj.frames[m];
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      const Vec3 x = fr.positions[i] * 10.0;
      const char chain = static_cast<char>('A' + a.chain_id % 26);
      // Four-character names start in column 13, shorter ones in column 14.
      const std::string name = a.name.size() >= 4 ? a.name.substr(0, 4) : " " + a.name;
      out += fmt::format("ATOM  {:5d} {:<4}{:1}{:>3} {:1}{:4d}{:1}   {:8.3f}{:8.3f}{:8.3f}{:6.2f}{:6.2f}          {:>2}\n",
                         (i + 1) % 100000, name, ' ', a.residue_name.substr(0, 3), chain, a.residue_seq % 10000, ' ', x[0],
                         x[1], x[2], 1.0, 0.0, a.element.substr(0, 2));
      if (i + 1 == atoms.size() || atoms[i + 1].chain_id != a.chain_id) out += "TER\n";
    }
    out += "ENDMDL\n";
  }
  out += "END\n";
  return out;
}

std::vector<Bond> parse_bonds_csv(std::string_view text, std::size_t natoms) {
  std::vector<Bond> bonds;
  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string l = detail::trim(lines[li]);
    if (l.empty() || l[0] == '#' || l.rfind("i,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = l.find(',', start);
      fields.push_back(detail::trim(std::string_view(l).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) throw FormatError(fmt::format("bond file line {}: expected i,j,length_nm,k", li + 1));
    const auto i = detail::parse_int(fields[0]);
    const auto j = detail::parse_int(fields[1]);
    const auto len = detail::parse_double(fields[2]);
    const auto k = detail::parse_double(fields[3]);
    if (!i || !j || !len || !k || *i < 0 || *j < 0 || static_cast<std::size_t>(*i) >= natoms ||
        static_cast<std::size_t>(*j) >= natoms || *i == *j || !(*len > 0.0) || *k < 0.0)
      throw FormatError(fmt::format("bond file line {}: invalid bond '{}'", li + 1, l));
    bonds.push_back({static_cast<std::size_t>(*i), static_cast<std::size_t>(*j), *len, *k});
  }
  return bonds;
}

std::string write_bonds_csv(const std::vector<Bond>& bonds) {
  std::string out = "i,j,length_nm,k\n";
  for (const Bond& b : bonds) out += fmt::format("{},{},{},{}\n", b.i, b.j, b.length, b.k);
  return out;
}

} // namespace conformetrics::trajio
