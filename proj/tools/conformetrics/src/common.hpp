#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conformetrics/metrics/series.hpp"

namespace conformetrics::cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Context {
  std::ostream& out;
  std::ostream& err;
};

// --workers, else CONFORMETRICS_WORKERS, else `fallback` (0 = all cores).
unsigned workers_from(unsigned flag, unsigned fallback = 0);

std::vector<std::string> split_list(const std::string& s);

void ensure_dir(const fs::path& dir);
void write_text(const fs::path& path, const std::string& text);

// Manifest skeleton shared by every subcommand.
json manifest_base(const std::string& subcommand);
void write_manifest(const fs::path& dir, const json& manifest);

// Per-metric series CSV: time_ps,value,scope with values in report units.
std::string series_csv(const std::vector<metrics::MetricSeries>& series);
std::vector<metrics::MetricSeries> parse_series_csv(const std::string& text, metrics::Metric metric, const std::string& origin);

struct RmsfRow {
  int residue = 0;
  double value = 0.0;   // angstrom
};
std::string rmsf_csv(const std::vector<int>& residues, const std::vector<double>& rmsf_nm);
std::vector<RmsfRow> parse_rmsf_csv(const std::string& text, const std::string& origin);

std::string xml_escape(const std::string& s);

} // namespace conformetrics::cli
