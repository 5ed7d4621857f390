#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conformetrics/sim/forcefield.hpp"
#include "conformetrics/sim/integrator.hpp"
#include "conformetrics/sim/minimize.hpp"

namespace conformetrics::sim {

enum class StageType { minimize, nve, nvt, npt, production };
const char* to_string(StageType t);

struct StageConfig {
  std::string name;                   // section name, e.g. "stage.2"
  StageType type = StageType::nvt;
  double duration_ps = 0.0;
  double temperature = 300.0;         // K
  std::optional<BarostatType> barostat;   // override of the [barostat] default for this stage type
  std::string restraint_select;       // empty: no restraints
  std::optional<double> restraint_k;  // kJ mol^-1 nm^-2, required with restraint_select
  int stride = 0;                     // MD frame stride in steps, 0 writes no frames
  bool write_frames = true;           // minimize stages: initial and final frame
};

struct SimConfig {
  std::uint64_t seed = 1;
  double dt = 0.002;
  unsigned workers = 1;
  int log_stride = 1;

  ForceFieldParams forcefield;
  std::map<std::string, double> charges;   // by atom name
  std::string bonds_file;                  // relative to the config file

  double buffer = 0.1;                     // nm
  int rebuild_interval = 10;

  bool thermostat = true;                  // v-rescale in nvt/npt/production stages
  double tau_t = 0.1;
  std::vector<std::string> coupling_groups;   // selection expressions; empty means one group

  double ref_pressure = 1.0;
  double tau_p = 1.0;
  double compressibility = 4.5e-5;
  BarostatType equilibration_barostat = BarostatType::berendsen;
  BarostatType production_barostat = BarostatType::parrinello_rahman;

  bool constraints = false;
  bool constrain_all_bonds = false;        // otherwise bonds to hydrogen only
  LincsParams lincs;

  MinimizerParams minimizer;

  std::vector<StageConfig> stages;
};

// Parse the sectioned key = value format. Every problem found is reported in a
// single UsageError, one per line, each naming the offending key and line.
SimConfig parse_sim_config(std::string_view text, const std::string& origin = "config");

// The valid keys of each section, for diagnostics and documentation.
const std::map<std::string, std::vector<std::string>>& config_schema();

} // namespace conformetrics::sim
