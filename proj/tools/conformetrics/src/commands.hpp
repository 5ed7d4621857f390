#pragma once

#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "common.hpp"

namespace conformetrics::cli {

struct AnalyzeOptions {
  std::string topology;
  std::string traj;
  std::string format;
  std::string bonds;
  std::string select = "protein";
  std::string rmsd_select = "backbone";
  std::string rmsf_select = "calpha";
  std::string reference;
  bool rmsd_fit = true;
  std::string metrics = "rmsd,rg,sasa,hbonds,rmsf";
  std::optional<double> window_start;
  std::optional<double> window_end;
  std::string label = "condition";
  std::string out;
  double probe = 0.14;
  int sphere_points = 960;
  std::string radii;
  double hb_distance = 0.30;
  double hb_angle = 150.0;
  double hb_covalent = 0.12;
  std::string hb_scope = "intra-chain";
  std::string manifest;
  unsigned workers = 0;
};

struct CompareOptions {
  std::vector<std::string> inputs;
  std::string control;
  std::string out;
};

struct PlotOptions {
  std::vector<std::string> inputs;
  std::string labels;
  std::string panels = "rmsd,rg,sasa,rmsf,hbonds";
  std::string out;
};

struct SimulateOptions {
  std::string config;
  std::string topology;
  std::string bonds;
  std::string out;
  std::optional<unsigned long long> seed;
  unsigned workers = 0;
};

struct BuildToyOptions {
  std::string out;
  int chains = 4;
  int residues = 6;
  double box = 3.2;
  double solvent_density = 24.0;
  unsigned long long seed = 2024;
  double production_ps = 100.0;
  int stride = 250;
};

void register_analyze(CLI::App& app, AnalyzeOptions& o);
void register_compare(CLI::App& app, CompareOptions& o);
void register_plot(CLI::App& app, PlotOptions& o);
void register_simulate(CLI::App& app, SimulateOptions& o);
void register_build_toy(CLI::App& app, BuildToyOptions& o);

int run_analyze(AnalyzeOptions o, Context& ctx);
int run_compare(const CompareOptions& o, Context& ctx);
int run_plot(const PlotOptions& o, Context& ctx);
int run_simulate(const SimulateOptions& o, Context& ctx);
int run_build_toy(const BuildToyOptions& o, Context& ctx);

} // namespace conformetrics::cli
