#include "conformetrics_cli/cli.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "commands.hpp"
#include "conformetrics/error.hpp"

namespace conformetrics::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"conformetrics: conformational metrics for MD trajectories, condition reports, SVG figures and a small MD kernel",
               "conformetrics"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  AnalyzeOptions ao;
  CompareOptions co;
  PlotOptions po;
  SimulateOptions so;
  BuildToyOptions bo;
  auto* analyze = app.add_subcommand("analyze", "Per-frame metric series, window statistics and convergence diagnostics");
  auto* report = app.add_subcommand("report", "Compare analyze reports across conditions");
  auto* plot = app.add_subcommand("plot", "Multi-panel SVG of metric series");
  auto* simulate = app.add_subcommand("simulate", "Run a staged MD protocol on a toy system");
  auto* toy = app.add_subcommand("build-toy", "Write a bead-chain toy system and its simulation config");
  register_analyze(*analyze, ao);
  register_compare(*report, co);
  register_plot(*plot, po);
  register_simulate(*simulate, so);
  register_build_toy(*toy, bo);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::usage);
  }

  try {
    if (analyze->parsed()) return run_analyze(ao, ctx);
    if (report->parsed()) return run_compare(co, ctx);
    if (plot->parsed()) return run_plot(po, ctx);
    if (simulate->parsed()) return run_simulate(so, ctx);
    if (toy->parsed()) return run_build_toy(bo, ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::usage);
  }
  return static_cast<int>(ErrorKind::usage);
}

} // namespace conformetrics::cli
