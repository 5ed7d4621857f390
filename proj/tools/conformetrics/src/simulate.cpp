#include <fmt/format.h>

#include "commands.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/sim/protocol.hpp"
#include "conformetrics/sim/toy_system.hpp"
#include "conformetrics/trajio/cfrm.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/structure.hpp"

namespace conformetrics::cli {

void register_simulate(CLI::App& app, SimulateOptions& o) {
  app.add_option("--config", o.config, "Simulation config (sectioned key = value)")->required();
  app.add_option("--topology", o.topology, "Starting structure (.gro/.pdb) with the box")->required();
  app.add_option("--bonds", o.bonds, "Bond list CSV; overrides [forcefield] bonds_file");
  app.add_option("--out", o.out, "Output directory")->required();
  app.add_option("--seed", o.seed, "Override [run] seed");
  app.add_option("--workers", o.workers, "Force-evaluation threads (default: CONFORMETRICS_WORKERS, else [run] workers)");
}

void register_build_toy(CLI::App& app, BuildToyOptions& o) {
  app.add_option("--out", o.out, "Output directory for toy.gro, toy_bonds.csv and toy.cfg")->required();
  app.add_option("--chains", o.chains, "Number of chains")->capture_default_str();
  app.add_option("--residues", o.residues, "Residues per chain")->capture_default_str();
  app.add_option("--box-nm", o.box, "Cubic box edge, nm")->capture_default_str();
  app.add_option("--solvent-density", o.solvent_density, "LJ solvent sites per nm^3, 0 for none")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for coordinates and the simulation config")->capture_default_str();
  app.add_option("--production-ps", o.production_ps, "Production stage length, ps")->capture_default_str();
  app.add_option("--stride", o.stride, "Production frame stride, steps")->capture_default_str();
}

int run_simulate(const SimulateOptions& o, Context& ctx) {
  const fs::path cfg_path = o.config;
  sim::SimConfig cfg = sim::parse_sim_config(trajio::read_file(cfg_path), cfg_path.string());
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers > 0 || std::getenv("CONFORMETRICS_WORKERS") != nullptr) cfg.workers = workers_from(o.workers, cfg.workers);

  Trajectory start = trajio::load_structure(o.topology);
  if (start.frames.empty()) throw FormatError(fmt::format("'{}' holds no coordinates", o.topology));
  std::string bonds_path = o.bonds;
  if (bonds_path.empty() && !cfg.bonds_file.empty()) {
    const fs::path b = cfg.bonds_file;
    bonds_path = (b.is_absolute() ? b : cfg_path.parent_path() / b).string();
  }
  Topology top = start.topology;
  if (!bonds_path.empty()) top = top.with_bonds(trajio::parse_bonds_csv(trajio::read_file(bonds_path), top.size()));
  top = sim::apply_config_charges(top, cfg);

  const sim::ProtocolResult res = sim::run_protocol(top, cfg, start.frames.front());

  const fs::path dir = o.out;
  ensure_dir(dir);
  write_text(dir / "trajectory.cfrm", trajio::write_cfrm(res.frames, top.size()));
  write_text(dir / "log.csv", res.log_csv);
  Trajectory final_traj{top, {res.final_state.to_frame(true)}};
  write_text(dir / "final.gro", trajio::write_gro(final_traj, "final state"));

  json m = manifest_base("simulate");
  m["inputs"] = {{"config", o.config}, {"topology", o.topology}, {"bonds", bonds_path}};
  m["out"] = o.out;
  m["seed"] = cfg.seed;
  json stages = json::array();
  for (const auto& s : res.stages) {
    json js{{"name", s.name}, {"type", sim::to_string(s.type)}, {"t_start_ps", s.t_start}, {"t_end_ps", s.t_end}, {"steps", s.steps}};
    if (s.type != sim::StageType::minimize && s.type != sim::StageType::nve && s.type != sim::StageType::nvt)
      js["barostat"] = sim::to_string(s.barostat);
    stages.push_back(js);
  }
  m["stages"] = stages;
  m["frames"] = res.frames.size();
  m["notes"] = res.notes;
  write_manifest(dir, m);

  for (const auto& n : res.notes) ctx.err << n << "\n";
  ctx.out << fmt::format("wrote {} frames to {}\n", res.frames.size(), (dir / "trajectory.cfrm").string());
  return 0;
}

int run_build_toy(const BuildToyOptions& o, Context& ctx) {
  const sim::ToySystem toy = sim::build_toy_chains(o.chains, o.residues, o.box, o.seed, o.solvent_density);
  const fs::path dir = o.out;
  ensure_dir(dir);
  Trajectory t{toy.topology, {toy.frame}};
  write_text(dir / "toy.gro", trajio::write_gro(t, "toy peptide-like chains"));
  write_text(dir / "toy_bonds.csv", trajio::write_bonds_csv(toy.topology.bonds()));
  write_text(dir / "toy.cfg", sim::toy_config_text("toy_bonds.csv", o.seed, o.production_ps, o.stride));
  ctx.out << fmt::format("wrote {} atoms in {} chains to {}\n", toy.topology.size(), o.chains, dir.string());
  return 0;
}

} // namespace conformetrics::cli
