#include "conformetrics/trajio/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "conformetrics/error.hpp"
#include "conformetrics/units.hpp"

namespace conformetrics::trajio {

using metrics::Metric;
using json = nlohmann::ordered_json;

const MetricEntry* MetricReport::find(Metric m) const {
  for (const auto& e : entries)
    if (e.metric == m) return &e;
  return nullptr;
}

std::string_view unit_name(Metric m) {
  switch (m) {
  case Metric::rmsd:
  case Metric::rg: return "angstrom";
  case Metric::sasa: return "angstrom^2";
  case Metric::hbonds: return "count";
  }
  return "";
}

double to_report_units(Metric m, double v) {
  switch (m) {
  case Metric::rmsd:
  case Metric::rg: return v * units::nm_to_angstrom;
  case Metric::sasa: return v * units::nm2_to_angstrom2;
  case Metric::hbonds: return v;
  }
  return v;
}

int report_decimals(Metric m) {
  switch (m) {
  case Metric::rmsd:
  case Metric::rg: return 2;
  case Metric::sasa: return 0;
  case Metric::hbonds: return 1;
  }
  return 2;
}

namespace {

std::string group_thousands(const std::string& s) {
  // s is a plain fixed-point number, optionally negative.
  const bool neg = !s.empty() && s[0] == '-';
  const std::size_t start = neg ? 1 : 0;
  const std::size_t dot = s.find('.');
  const std::size_t int_end = dot == std::string::npos ? s.size() : dot;
  std::string digits = s.substr(start, int_end - start);
  std::string grouped;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) grouped += ',';
    grouped += digits[i];
  }
  return (neg ? "-" : "") + grouped + s.substr(int_end);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string fmt_number(double v) { return fmt::format("{}", v); }

struct Row {
  std::string condition, metric, mean, sd, unit, ws, we, delta;
};

std::vector<Row> build_rows(const MetricReport& report, const MetricReport* control, bool with_delta) {
  if (with_delta && control == nullptr) throw UsageError("report: a percentage delta was requested but no control is present");
  std::vector<Row> rows;
  for (const auto& e : report.entries) {
    Row r;
    r.condition = report.condition_label;
    r.metric = std::string(metrics::to_string(e.metric));
    r.mean = render_value(e.metric, e.stats.mean);
    r.sd = render_value(e.metric, e.stats.sd);
    r.unit = std::string(unit_name(e.metric));
    r.ws = fmt_number(e.stats.window.start);
    r.we = fmt_number(e.stats.window.end);
    if (control != nullptr) {
      const MetricEntry* c = control->find(e.metric);
      if (c == nullptr)
        throw UsageError(fmt::format("report: control '{}' has no '{}' metric", control->condition_label, r.metric));
      r.delta = format_delta(stats::pct_delta(c->stats, e.stats));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

json block_json(const stats::BlockAverageResult& b, Metric m) {
  json est = json::array();
  for (const auto& e : b.estimates)
    est.push_back({{"block_size", e.block_size}, {"n_blocks", e.n_blocks}, {"se", to_report_units(m, e.se)}});
  return {{"unit", unit_name(m)},
          {"estimates", est},
          {"plateau", b.plateau},
          {"plateau_block_size", b.plateau_block_size},
          {"plateau_se", to_report_units(m, b.plateau_se)}};
}

json tau_json(const stats::AutocorrResult& t) {
  return {{"tau_int_samples", t.tau_int},
          {"effective_samples", t.effective_samples},
          {"window", t.window},
          {"degenerate", t.degenerate},
          {"window_converged", t.window_converged}};
}

} // namespace

std::string render_value(Metric m, double internal_value, bool thousands_separator) {
  const double v = to_report_units(m, internal_value);
  std::string s = fmt::format("{:.{}f}", v, report_decimals(m));
  if (s == "-0" || s == "-0.0" || s == "-0.00") s.erase(0, 1);
  return thousands_separator ? group_thousands(s) : s;
}

std::string render_mean_sd(Metric m, double mean, double sd, bool thousands_separator) {
  return render_value(m, mean, thousands_separator) + " ± " + render_value(m, sd, thousands_separator);
}

std::string format_delta(long pct) {
  if (pct > 0) return fmt::format("+{}", pct);
  return fmt::format("{}", pct);
}

std::string emit_report(const MetricReport& report, ReportFormat format, const MetricReport* control, bool with_delta) {
  const auto rows = build_rows(report, control, with_delta);
  if (format == ReportFormat::csv) {
    std::string out = std::string(kReportCsvHeader) + "\n";
    for (const auto& r : rows)
      out += fmt::format("{},{},{},{},{},{},{},{}\n", csv_field(r.condition), r.metric, r.mean, r.sd, r.unit, r.ws, r.we, r.delta);
    return out;
  }

  json j;
  j["schema"] = "conformetrics.report/1";
  j["condition"] = report.condition_label;
  j["caveat"] = std::string(stats::kSingleTrajectoryCaveat);
  json jrows = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    const auto& e = report.entries[k];
    jrows.push_back({{"condition", r.condition},
                     {"metric", r.metric},
                     {"mean", r.mean},
                     {"sd", r.sd},
                     {"unit", r.unit},
                     {"window_start_ps", e.stats.window.start},
                     {"window_end_ps", e.stats.window.end},
                     {"delta_pct_vs_control", r.delta},
                     {"caveat", std::string(e.stats.caveat)},
                     {"n_frames", e.stats.n_frames},
                     {"mean_internal", e.stats.mean},
                     {"sd_internal", e.stats.sd},
                     {"selection", e.selection}});
  }
  j["rows"] = jrows;
  json block = json::object(), tau = json::object();
  for (const auto& e : report.entries) {
    const std::string name(metrics::to_string(e.metric));
    if (e.block_se) block[name] = block_json(*e.block_se, e.metric);
    if (e.tau_int) tau[name] = tau_json(*e.tau_int);
  }
  j["convergence"] = {{"block_se", block}, {"tau_int", tau}};
  json prov = json::object();
  for (const auto& [k, v] : report.provenance) prov[k] = v;
  j["provenance"] = prov;
  return j.dump(2) + "\n";
}

MetricReport parse_report_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
  try {
    MetricReport r;
    r.condition_label = j.at("condition").get<std::string>();
    for (const auto& row : j.at("rows")) {
      MetricEntry e;
      const auto name = row.at("metric").get<std::string>();
      const auto m = metrics::parse_metric(name);
      if (!m) throw FormatError("report JSON: unknown metric '" + name + "'");
      e.metric = *m;
      e.selection = row.value("selection", "");
      e.stats.mean = row.at("mean_internal").get<double>();
      e.stats.sd = row.at("sd_internal").get<double>();
      e.stats.n_frames = row.at("n_frames").get<std::size_t>();
      e.stats.window = {row.at("window_start_ps").get<double>(), row.at("window_end_ps").get<double>()};
      r.entries.push_back(std::move(e));
    }
    if (j.contains("provenance"))
      for (const auto& [k, v] : j["provenance"].items()) r.provenance.emplace_back(k, v.get<std::string>());
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
}

} // namespace conformetrics::trajio
