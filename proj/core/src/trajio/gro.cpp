#include <charconv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "conformetrics/elements.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/trajio/structure.hpp"
#include "text_util.hpp"

namespace conformetrics::trajio {
namespace {

struct GroAtomLine {
  int resnr;
  std::string resname;
  std::string name;
  Vec3 x;
};

double parse_fixed_coord(std::string_view line, std::size_t col, std::size_t lineno) {
  const std::string_view field = line.substr(col, 8);
  // %8.3f puts the decimal point at offset 4 of the field.
  if (field.size() != 8 || field[4] != '.')
    throw FormatError(fmt::format("GRO line {}: coordinate field at column {} is misaligned: '{}'", lineno, col + 1, field));
  const auto v = detail::parse_double(field);
  if (!v) throw FormatError(fmt::format("GRO line {}: cannot parse coordinate '{}'", lineno, field));
  return *v;
}

GroAtomLine parse_atom_line(std::string_view line, std::size_t lineno) {
  if (line.size() < 44)
    throw FormatError(fmt::format("GRO line {}: atom line too short ({} columns, need 44)", lineno, line.size()));
  GroAtomLine a;
  const auto resnr = detail::parse_int(line.substr(0, 5));
  if (!resnr) throw FormatError(fmt::format("GRO line {}: bad residue number '{}'", lineno, line.substr(0, 5)));
  a.resnr = *resnr;
  a.resname = detail::trim(line.substr(5, 5));
  a.name = detail::trim(line.substr(10, 5));
  if (a.name.empty()) throw FormatError(fmt::format("GRO line {}: empty atom name", lineno));
  if (!detail::parse_int(line.substr(15, 5)))
    throw FormatError(fmt::format("GRO line {}: bad atom number '{}'", lineno, line.substr(15, 5)));
  for (int k = 0; k < 3; ++k) a.x[k] = parse_fixed_coord(line, 20 + 8 * k, lineno);
  return a;
}

Box parse_box_line(std::string_view line, std::size_t lineno) {
  std::vector<double> v;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    const auto d = detail::parse_double(tok);
    if (!d) throw FormatError(fmt::format("GRO line {}: bad box value '{}'", lineno, tok));
    v.push_back(*d);
  }
  if (v.size() != 3 && v.size() != 9)
    throw FormatError(fmt::format("GRO line {}: box line has {} values, expected 3 or 9", lineno, v.size()));
  if (v.size() == 9) {
    for (std::size_t k = 3; k < 9; ++k)
      if (v[k] != 0.0) throw FormatError(fmt::format("GRO line {}: triclinic boxes are not supported", lineno));
  }
  return Box::rectangular(v[0], v[1], v[2]);
}

std::optional<double> time_from_title(std::string_view title) {
  const auto p = title.find("t=");
  if (p == std::string_view::npos) return std::nullopt;
  std::istringstream in{std::string(title.substr(p + 2))};
  std::string tok;
  if (!(in >> tok)) return std::nullopt;
  return detail::parse_double(tok);
}

} // namespace

Trajectory parse_gro(std::string_view text) {
  const auto lines = detail::split_lines(text);
  Trajectory traj;
  std::size_t li = 0;
  std::size_t natoms_first = 0;
  std::size_t frame_no = 0;
  while (li < lines.size()) {
    if (detail::trim(lines[li]).empty() && li + 1 >= lines.size()) break; // trailing blank line
    const std::string_view title = lines[li];
    if (li + 1 >= lines.size()) throw FormatError(fmt::format("GRO line {}: missing atom-count line", li + 2));
    const auto count = detail::parse_int(detail::trim(lines[li + 1]));
    if (!count || *count < 0) throw FormatError(fmt::format("GRO line {}: bad atom count '{}'", li + 2, lines[li + 1]));
    const std::size_t natoms = static_cast<std::size_t>(*count);
    if (frame_no > 0 && natoms != natoms_first)
      throw FormatError(fmt::format("GRO frame {}: atom count {} differs from first frame ({})", frame_no, natoms, natoms_first));
    li += 2;

    Frame frame;
    frame.positions.reserve(natoms);
    std::vector<GroAtomLine> atom_lines;
    for (std::size_t a = 0; a < natoms; ++a, ++li) {
      // Running into the box line (or EOF) means the frame has fewer atoms than declared.
      if (li >= lines.size() || (lines[li].size() < 44 && detail::looks_like_box(lines[li])))
        throw FormatError(fmt::format("GRO frame {}: atom-count mismatch, declared {} atoms but found {}", frame_no, natoms, a));
      GroAtomLine at = parse_atom_line(lines[li], li + 1);
      frame.positions.push_back(at.x);
      if (frame_no == 0) atom_lines.push_back(std::move(at));
    }
    if (li >= lines.size()) throw FormatError(fmt::format("GRO frame {}: missing box line", frame_no));
    frame.box = parse_box_line(lines[li], li + 1);
    ++li;
    frame.time = time_from_title(title).value_or(static_cast<double>(frame_no));

    if (frame_no == 0) {
      natoms_first = natoms;
      std::vector<Atom> atoms;
      atoms.reserve(natoms);
      int chain = 0;
      for (std::size_t a = 0; a < atom_lines.size(); ++a) {
        const auto& al = atom_lines[a];
        if (a > 0 && al.resnr < atom_lines[a - 1].resnr) ++chain;
        Atom atom;
        atom.index = a;
        atom.name = al.name;
        atom.residue_name = al.resname;
        atom.residue_seq = al.resnr;
        atom.chain_id = chain;
        atom.element = element_from_atom_name(al.name, al.resname);
        const auto data = element_data(atom.element);
        if (!data) throw FormatError(fmt::format("GRO: cannot resolve element for atom {} '{}'", a + 1, al.name));
        atom.mass = data->mass;
        atoms.push_back(std::move(atom));
      }
      traj.topology = Topology(std::move(atoms), {});
    }
    traj.frames.push_back(std::move(frame));
    ++frame_no;
    // Skip blank separator lines between frames.
    while (li < lines.size() && detail::trim(lines[li]).empty()) ++li;
  }
  if (traj.frames.empty()) throw FormatError("GRO: no frames found");
  validate_trajectory(traj);
  return traj;
}

std::string write_gro(const Trajectory& traj, std::string_view title) {
  std::string out;
  const auto& atoms = traj.topology.atoms();
  for (const Frame& fr : traj.frames) {
    out += fmt::format("{} t= {:.5f}\n", title, fr.time);
    out += fmt::format("{:5d}\n", atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Atom& a = atoms[i];
      const Vec3& x = fr.positions[i];
      out += fmt::format("{:5d}{:<5.5}{:>5.5}{:5d}{:8.3f}{:8.3f}{:8.3f}\n", a.residue_seq % 100000, a.residue_name, a.name,
                         (i + 1) % 100000, x[0], x[1], x[2]);
    }
    const Vec3 l = fr.box.lengths();
    out += fmt::format("{:10.5f}{:10.5f}{:10.5f}\n", l[0], l[1], l[2]);
  }
  return out;
}

} // namespace conformetrics::trajio
