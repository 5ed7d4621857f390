#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "commands.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/metrics/deviation.hpp"
#include "conformetrics/metrics/gyration.hpp"
#include "conformetrics/metrics/hbonds.hpp"
#include "conformetrics/metrics/sasa.hpp"
#include "conformetrics/selection.hpp"
#include "conformetrics/stats/convergence.hpp"
#include "conformetrics/stats/window.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"
#include "conformetrics/trajio/structure.hpp"

namespace conformetrics::cli {

using metrics::Metric;

void register_analyze(CLI::App& app, AnalyzeOptions& o) {
  app.add_option("--topology", o.topology, "Structure file (.gro/.pdb) defining atoms");
  app.add_option("--traj", o.traj, "Trajectory file (GRO multi-frame, PDB multi-model or CFRM)");
  app.add_option("--format", o.format, "Trajectory format: gro, pdb or cfrm (default: from extension)");
  app.add_option("--bonds", o.bonds, "Bond list CSV i,j,length_nm,k (0-based) used for donor-hydrogen assignment");
  app.add_option("--select", o.select, "Selection for Rg, SASA and H-bonds")->capture_default_str();
  app.add_option("--rmsd-select", o.rmsd_select, "Selection for RMSD")->capture_default_str();
  app.add_option("--rmsf-select", o.rmsf_select, "Selection for per-residue RMSF")->capture_default_str();
  app.add_option("--reference", o.reference, "Reference structure for RMSD (e.g. the minimised start)");
  app.add_flag("!--no-fit", o.rmsd_fit, "Raw coordinate RMSD without superposition");
  app.add_option("--metrics", o.metrics, "Comma-separated subset of rmsd,rg,sasa,hbonds,rmsf")->capture_default_str();
  app.add_option("--window-start-ps", o.window_start, "Window start (default: last 20% of the trajectory)");
  app.add_option("--window-end-ps", o.window_end, "Window end (default: last frame)");
  app.add_option("--label", o.label, "Condition label written into the report")->capture_default_str();
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--probe-nm", o.probe, "SASA probe radius, nm")->capture_default_str();
  app.add_option("--sphere-points", o.sphere_points, "SASA points per atom")->capture_default_str();
  app.add_option("--radii", o.radii, "Radii override CSV element,radius_nm (default: Bondi)");
  app.add_option("--hb-distance-nm", o.hb_distance, "Donor-acceptor distance cutoff, nm")->capture_default_str();
  app.add_option("--hb-angle-deg", o.hb_angle, "Minimum D-H-A angle, degrees")->capture_default_str();
  app.add_option("--hb-covalent-nm", o.hb_covalent, "D-H assignment distance without a bond list, nm")->capture_default_str();
  app.add_option("--hb-scope", o.hb_scope, "intra-chain or all")->capture_default_str();
  app.add_option("--manifest", o.manifest, "Re-run from a manifest.json written by a previous analyze");
  app.add_option("--workers", o.workers, "Worker threads (default: CONFORMETRICS_WORKERS or all cores)");
}

namespace {

json options_json(const AnalyzeOptions& o) {
  json j;
  j["topology"] = o.topology;
  j["traj"] = o.traj;
  j["format"] = o.format;
  j["bonds"] = o.bonds;
  j["select"] = o.select;
  j["rmsd_select"] = o.rmsd_select;
  j["rmsf_select"] = o.rmsf_select;
  j["reference"] = o.reference;
  j["rmsd_fit"] = o.rmsd_fit;
  j["metrics"] = o.metrics;
  j["window_start_ps"] = o.window_start ? json(*o.window_start) : json(nullptr);
  j["window_end_ps"] = o.window_end ? json(*o.window_end) : json(nullptr);
  j["label"] = o.label;
  j["out"] = o.out;
  j["probe_nm"] = o.probe;
  j["sphere_points"] = o.sphere_points;
  j["radii"] = o.radii;
  j["hb_distance_nm"] = o.hb_distance;
  j["hb_angle_deg"] = o.hb_angle;
  j["hb_covalent_nm"] = o.hb_covalent;
  j["hb_scope"] = o.hb_scope;
  return j;
}

AnalyzeOptions options_from_manifest(const fs::path& path) {
  json m;
  try {
    m = json::parse(trajio::read_file(path));
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("manifest '{}': {}", path.string(), e.what()));
  }
  if (m.value("subcommand", "") != "analyze" || !m.contains("options"))
    throw FormatError(fmt::format("manifest '{}' was not written by analyze", path.string()));
  try {
    const json& j = m["options"];
    AnalyzeOptions o;
    o.topology = j.at("topology");
    o.traj = j.at("traj");
    o.format = j.at("format");
    o.bonds = j.at("bonds");
    o.select = j.at("select");
    o.rmsd_select = j.at("rmsd_select");
    o.rmsf_select = j.at("rmsf_select");
    o.reference = j.at("reference");
    o.rmsd_fit = j.at("rmsd_fit");
    o.metrics = j.at("metrics");
    if (!j.at("window_start_ps").is_null()) o.window_start = j["window_start_ps"].get<double>();
    if (!j.at("window_end_ps").is_null()) o.window_end = j["window_end_ps"].get<double>();
    o.label = j.at("label");
    o.out = j.at("out");
    o.probe = j.at("probe_nm");
    o.sphere_points = j.at("sphere_points");
    o.radii = j.at("radii");
    o.hb_distance = j.at("hb_distance_nm");
    o.hb_angle = j.at("hb_angle_deg");
    o.hb_covalent = j.at("hb_covalent_nm");
    o.hb_scope = j.at("hb_scope");
    return o;
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("manifest '{}': {}", path.string(), e.what()));
  }
}

std::string num(double v) { return fmt::format("{}", v); }

const char* label_of(Metric m) {
  switch (m) {
    case Metric::rmsd: return "RMSD (Å)";
    case Metric::rg: return "Rg (Å)";
    case Metric::sasa: return "SASA (Å²)";
    case Metric::hbonds: return "H-bonds";
  }
  return "";
}

std::string text_report(const trajio::MetricReport& r, const stats::WindowSpec& w, std::size_t frames) {
  std::string out = fmt::format("Condition: {}\nWindow: {} to {} ps ({} frames)\n\n", r.condition_label, w.start, w.end, frames);
  for (const auto& e : r.entries)
    out += fmt::format("{:<12}{}\n", label_of(e.metric), trajio::render_mean_sd(e.metric, e.stats.mean, e.stats.sd, true));
  out += fmt::format("\nNote: {}\n", stats::kSingleTrajectoryCaveat);
  return out;
}

} // namespace

int run_analyze(AnalyzeOptions o, Context& ctx) {
  if (!o.manifest.empty()) {
    const unsigned workers = o.workers;
    const std::string out = o.out;
    o = options_from_manifest(o.manifest);
    o.workers = workers;
    if (!out.empty()) o.out = out;
  }
  if (o.topology.empty() || o.traj.empty() || o.out.empty())
    throw UsageError("analyze: --topology, --traj and --out are required (or --manifest)");

  std::vector<std::string> requested = split_list(o.metrics);
  if (requested.empty()) throw UsageError("analyze: --metrics is empty");
  std::set<std::string> wanted;
  for (const auto& m : requested) {
    if (m != "rmsf" && !metrics::parse_metric(m))
      throw UsageError(fmt::format("analyze: unknown metric '{}'; valid: rmsd, rg, sasa, hbonds, rmsf", m));
    wanted.insert(m);
  }
  if (wanted.count("rmsd") && o.reference.empty())
    throw UsageError("analyze: rmsd was requested but no --reference structure was given");
  metrics::HBondScope scope;
  if (o.hb_scope == "intra-chain") scope = metrics::HBondScope::intra_chain;
  else if (o.hb_scope == "all") scope = metrics::HBondScope::all;
  else throw UsageError(fmt::format("analyze: --hb-scope must be intra-chain or all, got '{}'", o.hb_scope));
  if (!(o.probe > 0.0)) throw UsageError("analyze: --probe-nm must be positive");
  if (o.sphere_points < 12) throw UsageError("analyze: --sphere-points must be at least 12");
  if (!(o.hb_distance > 0.0) || !(o.hb_covalent > 0.0) || !(o.hb_angle > 0.0 && o.hb_angle <= 180.0))
    throw UsageError("analyze: H-bond thresholds must be positive and the angle in (0, 180]");

  trajio::TrajectorySource src;
  src.topology_path = o.topology;
  src.frames_path = o.traj;
  if (!o.format.empty()) {
    const auto f = trajio::parse_frame_format(o.format);
    if (!f) throw UsageError(fmt::format("analyze: unknown --format '{}'; valid: gro, pdb, cfrm", o.format));
    src.format = *f;
  } else {
    const auto f = trajio::format_from_extension(o.traj);
    if (!f) throw UsageError(fmt::format("analyze: cannot infer the format of '{}'; pass --format", o.traj));
    src.format = *f;
  }
  Trajectory traj = trajio::load_trajectory(src);
  if (!o.bonds.empty())
    traj.topology = traj.topology.with_bonds(trajio::parse_bonds_csv(trajio::read_file(o.bonds), traj.topology.size()));
  if (traj.frames.empty()) throw UsageError(fmt::format("analyze: '{}' holds no frames", o.traj));

  const double t0 = traj.frames.front().time;
  const double t1 = traj.frames.back().time;
  stats::WindowSpec window{o.window_start.value_or(t1 - 0.2 * (t1 - t0)), o.window_end.value_or(t1)};
  if (window.start < t0 || window.end > t1 || !(window.start < window.end))
    throw UsageError(fmt::format("analyze: window [{}, {}] ps is not inside the trajectory time range [{}, {}] ps",
                                 window.start, window.end, t0, t1));

  const unsigned workers = workers_from(o.workers);
  const fs::path out_dir = o.out;
  ensure_dir(out_dir);

  trajio::MetricReport report;
  report.condition_label = o.label;
  const Selection sel = select(traj.topology, o.select);

  auto add_entry = [&](Metric m, const std::string& selection, std::vector<metrics::MetricSeries> series) {
    write_text(out_dir / fmt::format("series_{}.csv", metrics::to_string(m)), series_csv(series));
    trajio::MetricEntry e;
    e.metric = m;
    e.selection = selection;
    e.stats = stats::window_stats(series.front(), window);
    const auto vals = stats::window_values(series.front(), window);
    const auto sizes = stats::default_block_sizes(vals.size());
    if (!sizes.empty()) e.block_se = stats::block_average_se(vals, sizes);
    if (vals.size() >= 100) e.tau_int = stats::integrated_autocorr_time(vals);
    e.series = std::move(series);
    report.entries.push_back(std::move(e));
  };

  if (wanted.count("rmsd")) {
    const Trajectory ref = trajio::load_structure(o.reference);
    if (ref.frames.empty() || ref.frames.front().positions.size() != traj.topology.size())
      throw UsageError(fmt::format("analyze: reference '{}' does not match the topology's {} atoms", o.reference, traj.topology.size()));
    const Selection rs = select(traj.topology, o.rmsd_select);
    add_entry(Metric::rmsd, o.rmsd_select, {metrics::rmsd_series(traj, rs, ref.frames.front(), o.rmsd_fit, workers)});
  }
  if (wanted.count("rg")) add_entry(Metric::rg, o.select, metrics::rg_series(traj, sel, workers));
  if (wanted.count("sasa")) {
    metrics::SasaParams sp;
    sp.probe_radius = o.probe;
    sp.sphere_points = o.sphere_points;
    if (!o.radii.empty()) sp.radii = RadiiTable::from_csv(trajio::read_file(o.radii), RadiiTable::bondi());
    add_entry(Metric::sasa, o.select, metrics::sasa_series(traj, sel, sp, workers));
  }
  if (wanted.count("hbonds")) {
    const metrics::HBondCriteria hc{o.hb_distance, o.hb_angle, o.hb_covalent};
    add_entry(Metric::hbonds, o.select, metrics::hbond_series(traj, sel, hc, scope, workers));
  }
  if (wanted.count("rmsf")) {
    const Selection fs_sel = select(traj.topology, o.rmsf_select);
    const auto prof = metrics::rmsf_profile(traj, fs_sel);
    write_text(out_dir / "rmsf.csv", rmsf_csv(prof.residue_seq, prof.rmsf));
  }

  auto& p = report.provenance;
  p.emplace_back("topology", o.topology);
  p.emplace_back("trajectory", o.traj);
  p.emplace_back("format", std::string(trajio::to_string(src.format)));
  p.emplace_back("n_frames", std::to_string(traj.frames.size()));
  p.emplace_back("frame_stride_ps", traj.frames.size() > 1 ? num((t1 - t0) / static_cast<double>(traj.frames.size() - 1)) : "n/a");
  p.emplace_back("window_ps", fmt::format("{}-{}", window.start, window.end));
  p.emplace_back("selection", o.select);
  if (wanted.count("rmsd")) {
    p.emplace_back("rmsd_selection", o.rmsd_select);
    p.emplace_back("rmsd_reference", o.reference);
    p.emplace_back("rmsd_fit", o.rmsd_fit ? "least-squares, uniform weights" : "none");
  }
  if (wanted.count("rmsf")) p.emplace_back("rmsf_selection", o.rmsf_select + "; two-pass fit, averaged over chain copies");
  if (wanted.count("sasa"))
    p.emplace_back("sasa", fmt::format("Shrake-Rupley, probe {} nm, {} points, radii {}", o.probe, o.sphere_points,
                                       o.radii.empty() ? "Bondi" : o.radii));
  if (wanted.count("hbonds"))
    p.emplace_back("hbonds", fmt::format("D-A <= {} nm, D-H-A >= {} deg, D-H assignment <= {} nm, scope {}", o.hb_distance,
                                         o.hb_angle, o.hb_covalent, o.hb_scope));
  p.emplace_back("total_scope", "all selected atoms across chains jointly; per-chain series in the CSVs");

  if (!report.entries.empty()) {
    write_text(out_dir / "report.json", trajio::emit_report(report, trajio::ReportFormat::json));
    write_text(out_dir / "report.csv", trajio::emit_report(report, trajio::ReportFormat::csv));
    write_text(out_dir / "report.txt", text_report(report, window, report.entries.front().stats.n_frames));
  }

  json m = manifest_base("analyze");
  m["inputs"] = {{"topology", o.topology}, {"traj", o.traj}, {"reference", o.reference}, {"bonds", o.bonds}, {"radii", o.radii}};
  m["selections"] = {{"select", o.select}, {"rmsd", o.rmsd_select}, {"rmsf", o.rmsf_select}};
  m["metrics"] = requested;
  m["window_ps"] = {window.start, window.end};
  m["control"] = nullptr;
  m["out"] = o.out;
  m["seed"] = nullptr;
  m["options"] = options_json(o);
  write_manifest(out_dir, m);

  if (!report.entries.empty()) ctx.out << text_report(report, window, report.entries.front().stats.n_frames);
  return 0;
}

} // namespace conformetrics::cli
