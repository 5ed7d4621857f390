#include "conformetrics/sim/config.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "../trajio/text_util.hpp"
#include "conformetrics/error.hpp"

namespace conformetrics::sim {

using trajio::detail::parse_double;
using trajio::detail::parse_int;
using trajio::detail::split_lines;
using trajio::detail::trim;

const char* to_string(StageType t) {
  switch (t) {
    case StageType::minimize: return "minimize";
    case StageType::nve: return "nve";
    case StageType::nvt: return "nvt";
    case StageType::npt: return "npt";
    case StageType::production: return "production";
  }
  return "?";
}

const std::map<std::string, std::vector<std::string>>& config_schema() {
  static const std::map<std::string, std::vector<std::string>> schema{
      {"run", {"seed", "dt_ps", "workers", "log_stride"}},
      {"forcefield", {"cutoff_nm", "coulomb_constant", "dispersion_correction", "exclusion_bonds", "bonds_file", "lj.<atom name or element>", "charge.<atom name>"}},
      {"neighbor", {"buffer_nm", "rebuild_interval"}},
      {"thermostat", {"type", "tau_t_ps", "group.<n>"}},
      {"barostat", {"ref_pressure_bar", "tau_p_ps", "compressibility_per_bar", "equilibration", "production"}},
      {"constraints", {"algorithm", "bonds", "lincs_order", "lincs_iterations"}},
      {"minimizer", {"max_steps", "fmax_tol", "initial_step_nm"}},
      {"stage.<n>", {"type", "duration_ps", "temperature_K", "barostat", "restraint_select", "restraint_k", "stride", "write_frames"}},
  };
  return schema;
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

class Reader {
public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  void error(std::size_t line, const std::string& msg) { errors_.push_back(fmt::format("{}:{}: {}", origin_, line, msg)); }
  void error(const std::string& msg) { errors_.push_back(fmt::format("{}: {}", origin_, msg)); }
  const std::vector<std::string>& errors() const { return errors_; }

  template <class T>
  void number(const Entry& e, T& out, bool positive, bool allow_zero = false) {
    if constexpr (std::is_integral_v<T>) {
      const auto v = parse_int(e.value);
      if (!v) return error(e.line, fmt::format("'{}' expects an integer, got '{}'", e.key, e.value));
      if ((positive && *v <= 0 && !(allow_zero && *v == 0)) || (!positive && *v < 0))
        return error(e.line, fmt::format("'{}' must be {}, got {}", e.key, allow_zero ? "non-negative" : "positive", *v));
      out = static_cast<T>(*v);
    } else {
      const auto v = parse_double(e.value);
      if (!v || !std::isfinite(*v)) return error(e.line, fmt::format("'{}' expects a number, got '{}'", e.key, e.value));
      if (positive && !(*v > 0.0) && !(allow_zero && *v == 0.0))
        return error(e.line, fmt::format("'{}' must be {}, got {}", e.key, allow_zero ? "non-negative" : "positive", *v));
      out = *v;
    }
  }

  void boolean(const Entry& e, bool& out) {
    if (e.value == "true" || e.value == "yes" || e.value == "1") out = true;
    else if (e.value == "false" || e.value == "no" || e.value == "0") out = false;
    else error(e.line, fmt::format("'{}' expects true or false, got '{}'", e.key, e.value));
  }

  void unknown(const std::string& section, const Entry& e, const std::string& schema_key) {
    error(e.line, fmt::format("unknown key '{}' in [{}]; valid keys: {}", e.key, section, join(config_schema().at(schema_key))));
  }

private:
  std::string origin_;
  std::vector<std::string> errors_;
};

std::optional<BarostatType> parse_barostat(const std::string& v) {
  if (v == "none") return BarostatType::none;
  if (v == "berendsen") return BarostatType::berendsen;
  if (v == "parrinello-rahman") return BarostatType::parrinello_rahman;
  return std::nullopt;
}

} // namespace

SimConfig parse_sim_config(std::string_view text, const std::string& origin) {
  Reader rd(origin);
  std::vector<std::pair<std::string, std::vector<Entry>>> sections;
  std::map<std::string, std::size_t> section_line;
  const auto lines = split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string l = trim(lines[li]);
    if (const auto hash = l.find('#'); hash != std::string::npos) l = trim(l.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') {
        rd.error(li + 1, fmt::format("malformed section header '{}'", l));
        continue;
      }
      const std::string name = trim(l.substr(1, l.size() - 2));
      if (section_line.count(name)) rd.error(li + 1, fmt::format("section [{}] repeated (first at line {})", name, section_line[name]));
      section_line[name] = li + 1;
      sections.push_back({name, {}});
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) {
      rd.error(li + 1, fmt::format("expected 'key = value', got '{}'", l));
      continue;
    }
    if (sections.empty()) {
      rd.error(li + 1, "key outside of any section");
      continue;
    }
    Entry e{trim(l.substr(0, eq)), trim(l.substr(eq + 1)), li + 1};
    for (const auto& prev : sections.back().second)
      if (prev.key == e.key) rd.error(e.line, fmt::format("key '{}' repeated (first at line {})", e.key, prev.line));
    sections.back().second.push_back(std::move(e));
  }

  SimConfig cfg;
  cfg.forcefield.species.clear();
  std::map<int, std::string> groups;
  std::map<int, StageConfig> stages;
  for (auto& [name, entries] : sections) {
    if (name == "run") {
      for (const auto& e : entries) {
        if (e.key == "seed") {
          try {
            std::size_t pos = 0;
            cfg.seed = std::stoull(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
          } catch (const std::exception&) {
            rd.error(e.line, fmt::format("'seed' expects an unsigned 64-bit integer, got '{}'", e.value));
          }
        } else if (e.key == "dt_ps") rd.number(e, cfg.dt, true);
        else if (e.key == "workers") rd.number(e, cfg.workers, true);
        else if (e.key == "log_stride") rd.number(e, cfg.log_stride, true);
        else rd.unknown(name, e, "run");
      }
    } else if (name == "forcefield") {
      for (const auto& e : entries) {
        if (e.key == "cutoff_nm") rd.number(e, cfg.forcefield.cutoff, true);
        else if (e.key == "coulomb_constant") rd.number(e, cfg.forcefield.coulomb_constant, true, true);
        else if (e.key == "dispersion_correction") rd.boolean(e, cfg.forcefield.dispersion_correction);
        else if (e.key == "exclusion_bonds") rd.number(e, cfg.forcefield.exclusion_bonds, false);
        else if (e.key == "bonds_file") cfg.bonds_file = e.value;
        else if (e.key.rfind("lj.", 0) == 0) {
          const std::string el = e.key.substr(3);
          std::istringstream in(e.value);
          std::string a, b, extra;
          in >> a >> b;
          const auto eps = parse_double(a);
          const auto sig = parse_double(b);
          if (!eps || !sig || (in >> extra)) rd.error(e.line, fmt::format("'{}' expects 'epsilon_kJmol sigma_nm', got '{}'", e.key, e.value));
          else if (*eps < 0.0 || !(*sig > 0.0)) rd.error(e.line, fmt::format("'{}' needs epsilon >= 0 and sigma > 0", e.key));
          else cfg.forcefield.species[el] = {*eps, *sig};
        } else if (e.key.rfind("charge.", 0) == 0) {
          const auto q = parse_double(e.value);
          if (!q) rd.error(e.line, fmt::format("'{}' expects a charge in e, got '{}'", e.key, e.value));
          else cfg.charges[e.key.substr(7)] = *q;
        } else rd.unknown(name, e, "forcefield");
      }
    } else if (name == "neighbor") {
      for (const auto& e : entries) {
        if (e.key == "buffer_nm") rd.number(e, cfg.buffer, true, true);
        else if (e.key == "rebuild_interval") rd.number(e, cfg.rebuild_interval, false);
        else rd.unknown(name, e, "neighbor");
      }
    } else if (name == "thermostat") {
      for (const auto& e : entries) {
        if (e.key == "type") {
          if (e.value == "v-rescale") cfg.thermostat = true;
          else if (e.value == "none") cfg.thermostat = false;
          else rd.error(e.line, fmt::format("'type' must be one of v-rescale, none; got '{}'", e.value));
        } else if (e.key == "tau_t_ps") rd.number(e, cfg.tau_t, true);
        else if (e.key.rfind("group.", 0) == 0) {
          const auto n = parse_int(e.key.substr(6));
          if (!n || *n < 1) rd.error(e.line, fmt::format("'{}': group index must be a positive integer", e.key));
          else if (e.value.empty()) rd.error(e.line, fmt::format("'{}' needs a selection", e.key));
          else groups[*n] = e.value;
        } else rd.unknown(name, e, "thermostat");
      }
    } else if (name == "barostat") {
      for (const auto& e : entries) {
        if (e.key == "ref_pressure_bar") rd.number(e, cfg.ref_pressure, false);
        else if (e.key == "tau_p_ps") rd.number(e, cfg.tau_p, true);
        else if (e.key == "compressibility_per_bar") rd.number(e, cfg.compressibility, true);
        else if (e.key == "equilibration" || e.key == "production") {
          const auto b = parse_barostat(e.value);
          if (!b) rd.error(e.line, fmt::format("'{}' must be one of berendsen, parrinello-rahman, none; got '{}'", e.key, e.value));
          else (e.key == "equilibration" ? cfg.equilibration_barostat : cfg.production_barostat) = *b;
        } else rd.unknown(name, e, "barostat");
      }
    } else if (name == "constraints") {
      for (const auto& e : entries) {
        if (e.key == "algorithm") {
          if (e.value == "lincs") cfg.constraints = true;
          else if (e.value == "none") cfg.constraints = false;
          else rd.error(e.line, fmt::format("'algorithm' must be one of lincs, none; got '{}'", e.value));
        } else if (e.key == "bonds") {
          if (e.value == "h-bonds") cfg.constrain_all_bonds = false;
          else if (e.value == "all-bonds") cfg.constrain_all_bonds = true;
          else rd.error(e.line, fmt::format("'bonds' must be one of h-bonds, all-bonds; got '{}'", e.value));
        } else if (e.key == "lincs_order") rd.number(e, cfg.lincs.order, true);
        else if (e.key == "lincs_iterations") rd.number(e, cfg.lincs.iterations, false);
        else rd.unknown(name, e, "constraints");
      }
    } else if (name == "minimizer") {
      for (const auto& e : entries) {
        if (e.key == "max_steps") rd.number(e, cfg.minimizer.max_steps, false);
        else if (e.key == "fmax_tol") rd.number(e, cfg.minimizer.fmax_tol, true);
        else if (e.key == "initial_step_nm") rd.number(e, cfg.minimizer.initial_step, true);
        else rd.unknown(name, e, "minimizer");
      }
    } else if (name.rfind("stage.", 0) == 0) {
      const auto idx = parse_int(name.substr(6));
      if (!idx || *idx < 1) {
        rd.error(section_line[name], fmt::format("section [{}]: stage index must be a positive integer", name));
        continue;
      }
      StageConfig st;
      st.name = name;
      bool has_type = false, has_duration = false;
      for (const auto& e : entries) {
        if (e.key == "type") {
          has_type = true;
          static const std::map<std::string, StageType> types{{"minimize", StageType::minimize}, {"nve", StageType::nve},
                                                              {"nvt", StageType::nvt}, {"npt", StageType::npt},
                                                              {"production", StageType::production}};
          const auto it = types.find(e.value);
          if (it == types.end()) rd.error(e.line, fmt::format("'type' must be one of minimize, nve, nvt, npt, production; got '{}'", e.value));
          else st.type = it->second;
        } else if (e.key == "duration_ps") {
          has_duration = true;
          rd.number(e, st.duration_ps, true);
        } else if (e.key == "temperature_K") rd.number(e, st.temperature, false);
        else if (e.key == "barostat") {
          const auto b = parse_barostat(e.value);
          if (!b) rd.error(e.line, fmt::format("'barostat' must be one of berendsen, parrinello-rahman, none; got '{}'", e.value));
          else st.barostat = *b;
        } else if (e.key == "restraint_select") st.restraint_select = e.value;
        else if (e.key == "restraint_k") {
          double k = 0.0;
          const std::size_t before = rd.errors().size();
          rd.number(e, k, true);
          if (rd.errors().size() == before) st.restraint_k = k;
        } else if (e.key == "stride") rd.number(e, st.stride, false);
        else if (e.key == "write_frames") rd.boolean(e, st.write_frames);
        else rd.unknown(name, e, "stage.<n>");
      }
      const std::size_t at = section_line[name];
      if (!has_type) rd.error(at, fmt::format("[{}] is missing 'type'", name));
      if (has_type && st.type != StageType::minimize && !has_duration) rd.error(at, fmt::format("[{}] is missing 'duration_ps'", name));
      if (!st.restraint_select.empty() && !st.restraint_k)
        rd.error(at, fmt::format("[{}] sets restraint_select but no restraint_k (there is no default force constant)", name));
      if (st.restraint_select.empty() && st.restraint_k) rd.error(at, fmt::format("[{}] sets restraint_k without restraint_select", name));
      stages[*idx] = std::move(st);
    } else {
      std::vector<std::string> names;
      for (const auto& [k, _] : config_schema()) names.push_back("[" + k + "]");
      rd.error(section_line[name], fmt::format("unknown section [{}]; valid sections: {}", name, join(names)));
    }
  }

  if (cfg.forcefield.species.empty()) rd.error("[forcefield] defines no lj.<atom name or element> parameters");
  if (stages.empty()) rd.error("no [stage.<n>] sections; at least one stage is required");
  if (cfg.forcefield.cutoff > 0.0)
    for (const auto& [el, sp] : cfg.forcefield.species)
      if (!(cfg.forcefield.cutoff > sp.sigma))
        rd.error(fmt::format("cutoff_nm {} must exceed sigma of '{}' ({})", cfg.forcefield.cutoff, el, sp.sigma));

  if (!rd.errors().empty()) {
    std::string msg = fmt::format("{} configuration error{}:", rd.errors().size(), rd.errors().size() == 1 ? "" : "s");
    for (const auto& e : rd.errors()) msg += "\n  " + e;
    throw UsageError(msg);
  }
  for (auto& [_, g] : groups) cfg.coupling_groups.push_back(g);
  for (auto& [_, s] : stages) cfg.stages.push_back(std::move(s));
  return cfg;
}

} // namespace conformetrics::sim
