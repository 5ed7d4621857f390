#include "conformetrics/sim/toy_system.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "conformetrics/elements.hpp"
#include "conformetrics/error.hpp"

namespace conformetrics::sim {
namespace {

struct ToyAtom {
  const char* name;
  const char* element;
  double charge;
};

constexpr ToyAtom kResidue[] = {{"N", "N", -0.5}, {"H", "H", 0.3}, {"CA", "C", 0.2}, {"C", "C", 0.5}, {"O", "O", -0.5}};
constexpr double kBondK = 2.0e5;   // kJ mol^-1 nm^-2
constexpr double kSolventClearance = 0.3;   // nm

Atom make_atom(std::size_t index, const char* name, const char* element, double charge, int resid, const char* resname, int chain) {
  Atom a;
  a.index = index;
  a.name = name;
  a.element = element;
  a.mass = element_data(element)->mass;
  a.charge = charge;
  a.residue_seq = resid;
  a.residue_name = resname;
  a.chain_id = chain;
  return a;
}

} // namespace

ToySystem build_toy_chains(int chains, int residues, double box_nm, std::uint64_t seed, double solvent_density) {
  if (chains < 1 || residues < 1 || !(box_nm > 0.0)) throw UsageError("toy system: chains, residues and box must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.005, 0.005);
  const int per_side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(chains))));
  const double spacing = box_nm / per_side;
  const double c30 = std::cos(M_PI / 6.0), s30 = std::sin(M_PI / 6.0);
  const double backbone_len[] = {0.146, 0.153, 0.133};   // N-CA, CA-C, C-N

  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<Vec3> pos;
  for (int c = 0; c < chains; ++c) {
    Vec3 cur(0.15 * box_nm, spacing * (0.5 + c % per_side), spacing * (0.5 + c / per_side));
    int zig = 1;
    std::size_t prev_c = 0;
    for (int r = 0; r < residues; ++r) {
      const std::size_t base = atoms.size();
      for (int k = 0; k < 5; ++k)
        atoms.push_back(make_atom(base + k, kResidue[k].name, kResidue[k].element, kResidue[k].charge, r + 1, "GLN", c));
      std::array<Vec3, 5> p;
      // N
      if (r > 0) {
        cur += backbone_len[2] * Vec3(c30, zig * s30, 0.0);
        zig = -zig;
      }
      p[0] = cur;
      const int side_n = -zig;   // the side away from the neighbours
      cur += backbone_len[0] * Vec3(c30, zig * s30, 0.0);
      zig = -zig;
      p[2] = cur;
      cur += backbone_len[1] * Vec3(c30, zig * s30, 0.0);
      zig = -zig;
      p[3] = cur;
      const int side_c = -zig;
      p[1] = p[0] + 0.101 * Vec3(0.0, side_n, 0.0);
      p[4] = p[3] + 0.123 * Vec3(0.0, side_c, 0.0);
      for (auto& v : p) {
        v += Vec3(jitter(rng), jitter(rng), jitter(rng));
        pos.push_back(v);
      }
      bonds.push_back({base, base + 1, 0.101, kBondK});
      bonds.push_back({base, base + 2, 0.146, kBondK});
      bonds.push_back({base + 2, base + 3, 0.153, kBondK});
      bonds.push_back({base + 3, base + 4, 0.123, kBondK});
      if (r > 0) bonds.push_back({prev_c, base, 0.133, kBondK});
      prev_c = base + 3;
    }
  }
  const Box box = Box::cubic(box_nm);
  if (solvent_density > 0.0) {
    const int per_axis = std::max(1, static_cast<int>(std::lround(box_nm * std::cbrt(solvent_density))));
    const double a = box_nm / per_axis;
    const std::size_t n_solute = pos.size();
    int resid = 0;
    for (int x = 0; x < per_axis; ++x)
      for (int y = 0; y < per_axis; ++y)
        for (int z = 0; z < per_axis; ++z) {
          const Vec3 site = a * Vec3(x + 0.5, y + 0.5, z + 0.5);
          bool clash = false;
          for (std::size_t i = 0; i < n_solute && !clash; ++i) clash = minimum_image(site - pos[i], box).norm() < kSolventClearance;
          if (clash) continue;
          atoms.push_back(make_atom(atoms.size(), "OW", "O", 0.0, ++resid, "SOL", chains));
          pos.push_back(site);
        }
  }
  ToySystem out;
  out.topology = Topology(std::move(atoms), std::move(bonds));
  out.frame.time = 0.0;
  out.frame.box = box;
  out.frame.positions = std::move(pos);
  return out;
}

std::string toy_config_text(const std::string& bonds_file, std::uint64_t seed, double production_ps, int stride) {
  return fmt::format(R"([run]
seed = {}
dt_ps = 0.002
workers = 1
log_stride = 10

[forcefield]
cutoff_nm = 0.9
dispersion_correction = true
exclusion_bonds = 3
bonds_file = {}
lj.C = 0.439 0.375
lj.N = 0.711 0.325
lj.O = 0.879 0.296
lj.H = 0.1 0.2
lj.OW = 3.0 0.32
charge.N = -0.5
charge.H = 0.3
charge.CA = 0.2
charge.C = 0.5
charge.O = -0.5

[neighbor]
buffer_nm = 0.1
rebuild_interval = 10

[thermostat]
type = v-rescale
tau_t_ps = 0.1
group.1 = protein
group.2 = not protein

[barostat]
ref_pressure_bar = 1.0
tau_p_ps = 1.0
compressibility_per_bar = 4.5e-5
equilibration = berendsen
production = parrinello-rahman

[constraints]
algorithm = lincs
bonds = h-bonds
lincs_order = 4
lincs_iterations = 1

[minimizer]
max_steps = 5000
fmax_tol = 1000
initial_step_nm = 0.01

[stage.1]
type = minimize
write_frames = false

[stage.2]
type = nvt
duration_ps = 10
temperature_K = 300
restraint_select = protein and not element H
restraint_k = 1000

[stage.3]
type = npt
duration_ps = 10
temperature_K = 300

[stage.4]
type = production
duration_ps = {}
temperature_K = 300
stride = {}
)",
                     seed, bonds_file, production_ps, stride);
}

ToySystem build_lj_fluid(int cells, double density, const std::string& element) {
  if (cells < 1 || !(density > 0.0)) throw UsageError("lj fluid: cells and density must be positive");
  const auto ed = element_data(element);
  if (!ed) throw UsageError(fmt::format("lj fluid: unknown element '{}'", element));
  const std::size_t n = 4 * static_cast<std::size_t>(cells) * cells * cells;
  const double l = std::cbrt(static_cast<double>(n) / density);
  const double a = l / cells;
  const Vec3 basis[] = {{0, 0, 0}, {0.5, 0.5, 0}, {0.5, 0, 0.5}, {0, 0.5, 0.5}};
  std::vector<Atom> atoms;
  std::vector<Vec3> pos;
  std::string upper = element;
  for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (int x = 0; x < cells; ++x)
    for (int y = 0; y < cells; ++y)
      for (int z = 0; z < cells; ++z)
        for (const Vec3& b : basis) {
          const std::size_t i = atoms.size();
          Atom at;
          at.index = i;
          at.name = upper;
          at.element = element;
          at.mass = ed->mass;
          at.residue_seq = static_cast<int>(i + 1);
          at.residue_name = upper;
          atoms.push_back(at);
          pos.push_back(a * (Vec3(x, y, z) + b + Vec3(0.25, 0.25, 0.25)));
        }
  ToySystem out;
  out.topology = Topology(std::move(atoms), {});
  out.frame.box = Box::cubic(l);
  out.frame.positions = std::move(pos);
  return out;
}

ForceFieldParams argon_forcefield(double cutoff) {
  ForceFieldParams p;
  p.species["Ar"] = {0.996, 0.34};
  p.cutoff = cutoff;
  return p;
}

} // namespace conformetrics::sim
