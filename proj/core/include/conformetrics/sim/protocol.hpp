#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conformetrics/sim/config.hpp"
#include "conformetrics/sim/minimize.hpp"
#include "conformetrics/sim/state.hpp"
#include "conformetrics/topology.hpp"

namespace conformetrics::sim {

struct StageSummary {
  std::string name;
  StageType type = StageType::nvt;
  BarostatType barostat = BarostatType::none;
  long steps = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::optional<MinimizeResult> minimize;
  std::size_t neighbor_rebuilds = 0;
  std::size_t barostat_clamps = 0;
  std::size_t thermostat_resamples = 0;
};

struct ProtocolResult {
  std::vector<Frame> frames;      // unwrapped coordinates
  std::string log_csv;            // step,time_ps,E_pot,E_kin,T_K,P_bar,box_nm
  std::vector<std::string> notes;
  std::vector<StageSummary> stages;
  SimState final_state;
};

inline constexpr const char* kSimLogHeader = "step,time_ps,E_pot,E_kin,T_K,P_bar,box_nm";

// Copy of `topology` with per-atom charges taken from the config by atom name.
// Atoms without an entry keep their charge.
Topology apply_config_charges(const Topology& topology, const SimConfig& config);

// Run the configured stages in order from `start`. Minimization uses every bond
// as a harmonic term; MD stages replace constrained bonds by LINCS constraints.
// Velocities are drawn from Maxwell-Boltzmann at the first MD stage's temperature.
// Failures are rethrown with the stage name prepended.
ProtocolResult run_protocol(const Topology& topology, const SimConfig& config, const Frame& start);

} // namespace conformetrics::sim
