#include "common.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"
#include "conformetrics_cli/cli.hpp"

namespace conformetrics::cli {

unsigned workers_from(unsigned flag, unsigned fallback) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CONFORMETRICS_WORKERS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0) throw UsageError(fmt::format("CONFORMETRICS_WORKERS='{}' is not a worker count", env));
    if (v > 0) return static_cast<unsigned>(v);
  }
  return resolve_workers(fallback);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
}

void write_text(const fs::path& path, const std::string& text) { trajio::write_file_atomic(path, text); }

json manifest_base(const std::string& subcommand) {
  json m;
  m["tool"] = "conformetrics";
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  return m;
}

void write_manifest(const fs::path& dir, const json& manifest) { write_text(dir / "manifest.json", manifest.dump(2) + "\n"); }

std::string series_csv(const std::vector<metrics::MetricSeries>& series) {
  std::string out = "time_ps,value,scope\n";
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.times.size(); ++i)
      out += fmt::format("{},{:.6f},{}\n", s.times[i], trajio::to_report_units(s.metric, s.values[i]), s.scope);
  return out;
}

namespace {

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream in(line);
  std::string item;
  while (std::getline(in, item, ',')) f.push_back(item);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

double to_double(const std::string& s, const std::string& origin, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(fmt::format("{}:{}: '{}' is not a number", origin, line, s));
  }
}

} // namespace

std::vector<metrics::MetricSeries> parse_series_csv(const std::string& text, metrics::Metric metric, const std::string& origin) {
  std::vector<metrics::MetricSeries> out;
  std::stringstream in(text);
  std::string line;
  std::size_t ln = 0;
  const double scale = trajio::to_report_units(metric, 1.0);
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (ln == 1) {
      if (line != "time_ps,value,scope") throw FormatError(fmt::format("{}: expected header 'time_ps,value,scope'", origin));
      continue;
    }
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 3) throw FormatError(fmt::format("{}:{}: expected 3 fields", origin, ln));
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.scope == f[2]; });
    if (it == out.end()) {
      out.push_back({metric, f[2], {}, {}});
      it = out.end() - 1;
    }
    it->times.push_back(to_double(f[0], origin, ln));
    it->values.push_back(to_double(f[1], origin, ln) / scale);
  }
  for (const auto& s : out) metrics::validate_series(s);
  return out;
}

std::string rmsf_csv(const std::vector<int>& residues, const std::vector<double>& rmsf_nm) {
  std::string out = "residue,rmsf_angstrom\n";
  for (std::size_t i = 0; i < residues.size(); ++i) out += fmt::format("{},{:.6f}\n", residues[i], rmsf_nm[i] * 10.0);
  return out;
}

std::vector<RmsfRow> parse_rmsf_csv(const std::string& text, const std::string& origin) {
  std::vector<RmsfRow> out;
  std::stringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (ln == 1) {
      if (line != "residue,rmsf_angstrom") throw FormatError(fmt::format("{}: expected header 'residue,rmsf_angstrom'", origin));
      continue;
    }
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 2) throw FormatError(fmt::format("{}:{}: expected 2 fields", origin, ln));
    out.push_back({static_cast<int>(to_double(f[0], origin, ln)), to_double(f[1], origin, ln)});
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace conformetrics::cli
