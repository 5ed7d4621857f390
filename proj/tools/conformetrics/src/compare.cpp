#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "commands.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/stats/window.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"

namespace conformetrics::cli {

using metrics::Metric;

void register_compare(CLI::App& app, CompareOptions& o) {
  app.add_option("reports", o.inputs, "report.json files or analyze output directories")->required();
  app.add_option("--control", o.control, "Condition label used as the reference for percentage changes");
  app.add_option("--out", o.out, "Directory for comparison.csv and comparison.txt");
}

namespace {

const char* column_title(Metric m) {
  switch (m) {
    case Metric::rmsd: return "RMSD (Å)";
    case Metric::rg: return "Rg (Å)";
    case Metric::sasa: return "SASA (Å²)";
    case Metric::hbonds: return "H-Bonds";
  }
  return "";
}

// Display width, counting UTF-8 sequences as one column.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

std::string pad(const std::string& s, std::size_t w) { return s + std::string(w > width(s) ? w - width(s) : 0, ' '); }

} // namespace

int run_compare(const CompareOptions& o, Context& ctx) {
  std::vector<trajio::MetricReport> reports;
  for (const auto& in : o.inputs) {
    fs::path p = in;
    if (fs::is_directory(p)) p /= "report.json";
    reports.push_back(trajio::parse_report_json(trajio::read_file(p)));
  }
  std::set<std::string> labels;
  for (const auto& r : reports)
    if (!labels.insert(r.condition_label).second) throw UsageError(fmt::format("report: duplicate condition label '{}'", r.condition_label));
  std::vector<Metric> metric_set;
  for (const auto& e : reports.front().entries) metric_set.push_back(e.metric);
  for (const auto& r : reports) {
    std::vector<Metric> ms;
    for (const auto& e : r.entries) ms.push_back(e.metric);
    if (ms != metric_set)
      throw UsageError(fmt::format("report: '{}' and '{}' carry different metric sets", reports.front().condition_label, r.condition_label));
  }
  const trajio::MetricReport* control = nullptr;
  if (!o.control.empty()) {
    for (const auto& r : reports)
      if (r.condition_label == o.control) control = &r;
    if (control == nullptr) throw UsageError(fmt::format("report: no report has the control label '{}'", o.control));
  }

  std::string csv;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::string part = trajio::emit_report(reports[i], trajio::ReportFormat::csv, control, control != nullptr);
    if (i > 0) part.erase(0, part.find('\n') + 1);
    csv += part;
  }

  // Condition table: mean ± SD columns with a Δ column per metric.
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Condition"};
  for (Metric m : metric_set) {
    header.push_back(column_title(m));
    if (control && (m == Metric::rg || m == Metric::sasa)) header.push_back(m == Metric::rg ? "ΔRg (%)" : "ΔSASA (%)");
  }
  rows.push_back(header);
  for (const auto& r : reports) {
    std::vector<std::string> row{r.condition_label};
    for (Metric m : metric_set) {
      const auto* e = r.find(m);
      row.push_back(trajio::render_mean_sd(m, e->stats.mean, e->stats.sd, true));
      if (control && (m == Metric::rg || m == Metric::sasa)) {
        if (&r == control) row.push_back("ref");
        else row.push_back(trajio::format_delta(stats::pct_delta(control->find(m)->stats, e->stats)) + "%");
      }
    }
    rows.push_back(row);
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], width(row[c]));
  std::string text;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += (c ? "  " : "") + pad(row[c], widths[c]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    text += line + "\n";
  }
  text += fmt::format("\nNote: {}\n", stats::kSingleTrajectoryCaveat);

  if (!o.out.empty()) {
    const fs::path dir = o.out;
    ensure_dir(dir);
    write_text(dir / "comparison.csv", csv);
    write_text(dir / "comparison.txt", text);
    json m = manifest_base("report");
    m["inputs"] = o.inputs;
    m["control"] = o.control.empty() ? json(nullptr) : json(o.control);
    m["out"] = o.out;
    write_manifest(dir, m);
  }
  ctx.out << text;
  return 0;
}

} // namespace conformetrics::cli
