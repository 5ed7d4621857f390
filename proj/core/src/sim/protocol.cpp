#include "conformetrics/sim/protocol.hpp"

#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/selection.hpp"
#include "conformetrics/sim/forces.hpp"
#include "conformetrics/sim/integrator.hpp"
#include "conformetrics/sim/lincs.hpp"
#include "conformetrics/sim/neighbor_list.hpp"

namespace conformetrics::sim {
namespace {

std::vector<std::vector<std::size_t>> resolve_groups(const Topology& top, const std::vector<std::string>& exprs) {
  std::vector<std::vector<std::size_t>> groups;
  if (exprs.empty()) return groups;
  std::vector<int> owner(top.size(), -1);
  for (std::size_t g = 0; g < exprs.size(); ++g) {
    const Selection sel = select(top, exprs[g]);
    for (std::size_t i : sel.indices) {
      if (owner[i] >= 0)
        throw UsageError(fmt::format("thermostat: atom {} is in coupling groups {} and {}", i + 1, owner[i] + 1, g + 1));
      owner[i] = static_cast<int>(g);
    }
    groups.push_back(sel.indices);
  }
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] < 0) throw UsageError(fmt::format("thermostat: atom {} is not in any coupling group", i + 1));
  return groups;
}

void append_log(std::string& out, const StepRecord& r) {
  out += fmt::format("{},{:.4f},{:.6f},{:.6f},{:.4f},{:.4f},{:.6f} {:.6f} {:.6f}\n", r.step, r.time, r.potential, r.kinetic,
                     r.temperature, r.pressure, r.box[0], r.box[1], r.box[2]);
}

} // namespace

Topology apply_config_charges(const Topology& topology, const SimConfig& config) {
  if (config.charges.empty()) return topology;
  std::vector<double> q(topology.size());
  for (std::size_t i = 0; i < topology.size(); ++i) {
    const auto it = config.charges.find(topology[i].name);
    q[i] = it == config.charges.end() ? topology[i].charge : it->second;
  }
  return topology.with_charges(q);
}

ProtocolResult run_protocol(const Topology& topology, const SimConfig& config, const Frame& start) {
  if (start.positions.size() != topology.size())
    throw UsageError(fmt::format("simulate: start frame has {} atoms, topology {}", start.positions.size(), topology.size()));
  if (config.stages.empty()) throw UsageError("simulate: no stages configured");

  const ForceField ff_min(topology, config.forcefield);
  ForceField ff_md(topology, config.forcefield);
  std::unique_ptr<Lincs> lincs;
  if (config.constraints) {
    auto cons = bond_constraints(topology, !config.constrain_all_bonds);
    std::vector<Bond> harmonic;
    for (const Bond& b : topology.bonds()) {
      const bool constrained = std::any_of(cons.begin(), cons.end(), [&](const Constraint& c) {
        return (c.i == b.i && c.j == b.j) || (c.i == b.j && c.j == b.i);
      });
      if (!constrained) harmonic.push_back(b);
    }
    ff_md.set_bonds(std::move(harmonic));
    lincs = std::make_unique<Lincs>(std::move(cons), ff_md.inverse_masses(), config.lincs);
  }
  const auto groups = resolve_groups(topology, config.coupling_groups);

  ProtocolResult out;
  out.log_csv = std::string(kSimLogHeader) + "\n";
  SimState state = SimState::from_frame(start, config.seed);
  bool dispersion_noted = false;
  bool velocities_ready = false;
  long global_step = 0;

  auto push_frame = [&](const SimState& s) { out.frames.push_back(s.to_frame(true)); };

  for (const StageConfig& st : config.stages) {
    StageSummary sum;
    sum.name = st.name;
    sum.type = st.type;
    sum.t_start = state.time;
    try {
      std::optional<PositionRestraints> restraints;
      if (!st.restraint_select.empty()) {
        const Selection sel = select(topology, st.restraint_select);
        PositionRestraints pr;
        pr.atoms = sel.indices;
        pr.k = *st.restraint_k;
        for (std::size_t i : sel.indices) pr.reference.push_back(state.positions[i]);
        restraints = std::move(pr);
      }
      const PositionRestraints* rp = restraints ? &*restraints : nullptr;

      if (st.type == StageType::minimize) {
        NeighborList nl(config.forcefield.cutoff, config.buffer, 0);
        if (st.write_frames) push_frame(state);
        sum.minimize = steepest_descent(state, ff_min, nl, config.minimizer, rp, config.workers);
        sum.neighbor_rebuilds = nl.rebuild_count();
        if (st.write_frames) push_frame(state);
        const auto& m = *sum.minimize;
        out.notes.push_back(fmt::format("{}: minimize {} steps, E {:.4f} -> {:.4f} kJ/mol, max force {:.4g}{}", st.name, m.steps,
                                        m.energies.front(), m.final_energy(), m.fmax,
                                        m.converged ? "" : (m.stalled ? " (stalled: step size underflow)" : " (max_steps reached)")));
      } else {
        MdOptions opt;
        opt.dt = config.dt;
        opt.workers = config.workers;
        opt.thermostat = config.thermostat && st.type != StageType::nve;
        opt.temperature = st.temperature;
        opt.tau_t = config.tau_t;
        opt.coupling_groups = groups;
        opt.ref_pressure = config.ref_pressure;
        opt.tau_p = config.tau_p;
        opt.compressibility = config.compressibility;
        switch (st.type) {
          case StageType::npt: opt.barostat = st.barostat.value_or(config.equilibration_barostat); break;
          case StageType::production: opt.barostat = st.barostat.value_or(config.production_barostat); break;
          default:
            if (st.barostat && *st.barostat != BarostatType::none)
              throw UsageError(fmt::format("{} stages run at constant volume; remove 'barostat'", to_string(st.type)));
            opt.barostat = BarostatType::none;
        }
        sum.barostat = opt.barostat;
        if (opt.barostat != BarostatType::parrinello_rahman) state.box_velocity = 0.0;
        if (!velocities_ready) {
          generate_velocities(state, ff_md.masses(), st.temperature);
          velocities_ready = true;
        }
        const long nsteps = std::lround(st.duration_ps / config.dt);
        NeighborList nl(config.forcefield.cutoff, config.buffer, config.rebuild_interval);
        MdEngine md(ff_md, state, nl, opt, lincs.get(), rp);
        md.set_step_counter(global_step);
        if (md.energies().dispersion != 0.0 && !dispersion_noted) {
          dispersion_noted = true;
          out.notes.push_back(fmt::format("dispersion correction (homogeneous C6 tail): E {:.4f} kJ/mol, P {:.4f} bar at start",
                                          md.energies().dispersion, md.energies().dispersion_pressure));
        }
        if (st.stride > 0 && (out.frames.empty() || out.frames.back().time != state.time)) push_frame(state);
        for (long k = 1; k <= nsteps; ++k) {
          const StepRecord rec = md.step();
          if (rec.step % config.log_stride == 0) append_log(out.log_csv, rec);
          if (st.stride > 0 && k % st.stride == 0) push_frame(state);
        }
        global_step = md.steps_done();
        sum.steps = nsteps;
        sum.neighbor_rebuilds = nl.rebuild_count();
        sum.barostat_clamps = md.clamp_count();
        sum.thermostat_resamples = md.resample_count();
        if (sum.barostat_clamps > 0)
          out.notes.push_back(fmt::format("{}: Berendsen scale factor clamped to [0.98, 1.02] on {} steps", st.name, sum.barostat_clamps));
        if (sum.thermostat_resamples > 0)
          out.notes.push_back(fmt::format("{}: zero kinetic energy, velocities resampled {} times", st.name, sum.thermostat_resamples));
      }
    } catch (const Error& e) {
      throw Error(e.kind(), fmt::format("{} ({}): {}", st.name, to_string(st.type), e.what()));
    }
    sum.t_end = state.time;
    out.stages.push_back(std::move(sum));
  }
  out.final_state = std::move(state);
  return out;
}

} // namespace conformetrics::sim
