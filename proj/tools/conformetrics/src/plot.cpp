#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "commands.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"

namespace conformetrics::cli {

void register_plot(CLI::App& app, PlotOptions& o) {
  app.add_option("inputs", o.inputs, "analyze output directories or series_<metric>.csv / rmsf.csv files")->required();
  app.add_option("--labels", o.labels, "Comma-separated legend labels, one per condition in input order");
  app.add_option("--panels", o.panels, "Panels in any order; lettered A-E in figure order")->capture_default_str();
  app.add_option("--out", o.out, "Output SVG path")->required();
}

namespace {

constexpr const char* kPanelOrder[] = {"rmsd", "rg", "sasa", "rmsf", "hbonds"};
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct PanelInfo {
  const char* title;
  const char* xlabel;
  const char* ylabel;
};

PanelInfo panel_info(const std::string& p) {
  if (p == "rmsd") return {"Root Mean Square Deviation", "Time (ps)", "RMSD (Å)"};
  if (p == "rg") return {"Total Radius of Gyration", "Time (ps)", "Rg (Å)"};
  if (p == "sasa") return {"Total Solvent Accessible Surface Area", "Time (ps)", "SASA (Å²)"};
  if (p == "rmsf") return {"Root Mean Square Fluctuation", "Residue", "RMSF (Å)"};
  return {"Total H-Bond Count", "Time (ps)", "H-bonds (count)"};
}

struct Line {
  std::vector<double> x, y;   // y in report units
};

struct Condition {
  std::string label;
  std::map<std::string, Line> panels;
};

std::string label_for(const fs::path& dir) {
  const fs::path rep = dir / "report.json";
  if (fs::exists(rep)) return trajio::parse_report_json(trajio::read_file(rep)).condition_label;
  const std::string name = dir.filename().string();
  return name.empty() ? dir.string() : name;
}

void load_csv(const fs::path& file, const std::string& panel, Condition& c) {
  const std::string text = trajio::read_file(file);
  Line line;
  if (panel == "rmsf") {
    for (const auto& r : parse_rmsf_csv(text, file.string())) {
      line.x.push_back(r.residue);
      line.y.push_back(r.value);
    }
  } else {
    const auto m = *metrics::parse_metric(panel);
    const auto series = parse_series_csv(text, m, file.string());
    const auto total = std::find_if(series.begin(), series.end(), [](const auto& s) { return s.scope == "total"; });
    if (total == series.end()) throw FormatError(fmt::format("{}: no 'total' scope rows", file.string()));
    line.x = total->times;
    for (double v : total->values) line.y.push_back(trajio::to_report_units(m, v));
  }
  c.panels[panel] = std::move(line);
}

std::string panel_of_file(const fs::path& f) {
  const std::string stem = f.stem().string();
  if (stem.rfind("rmsf", 0) == 0) return "rmsf";
  if (stem.rfind("series_", 0) == 0) {
    const std::string m = stem.substr(7);
    if (metrics::parse_metric(m)) return m;
  }
  throw UsageError(fmt::format("plot: cannot tell which metric '{}' holds (expected series_<metric>.csv or rmsf.csv)", f.string()));
}

struct Ticks {
  double lo, hi, step;
  int decimals;
};

Ticks nice_ticks(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double step = (r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0) * mag;
  const int decimals = std::max(0, -static_cast<int>(std::floor(std::log10(step) + 1e-9)));
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step, decimals};
}

} // namespace

int run_plot(const PlotOptions& o, Context& ctx) {
  std::vector<std::string> panels;
  {
    const auto req = split_list(o.panels);
    if (req.empty()) throw UsageError("plot: --panels is empty");
    for (const auto& p : req)
      if (std::find(std::begin(kPanelOrder), std::end(kPanelOrder), p) == std::end(kPanelOrder))
        throw UsageError(fmt::format("plot: unknown panel '{}'; valid: rmsd, rg, sasa, rmsf, hbonds", p));
    for (const char* p : kPanelOrder)
      if (std::find(req.begin(), req.end(), p) != req.end()) panels.emplace_back(p);
  }

  // One condition per input directory; bare CSV files group by their parent directory.
  std::vector<Condition> conds;
  std::vector<std::string> keys;
  auto condition = [&](const std::string& key, const std::string& label) -> Condition& {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == key) return conds[i];
    keys.push_back(key);
    conds.push_back({label, {}});
    return conds.back();
  };
  for (const auto& in : o.inputs) {
    const fs::path p = in;
    if (fs::is_directory(p)) {
      Condition& c = condition(fs::weakly_canonical(p).string(), label_for(p));
      for (const auto& panel : panels) {
        const fs::path f = p / (panel == "rmsf" ? std::string("rmsf.csv") : "series_" + panel + ".csv");
        if (fs::exists(f)) load_csv(f, panel, c);
      }
    } else {
      if (!fs::exists(p)) throw UsageError(fmt::format("plot: '{}' does not exist", in));
      const std::string panel = panel_of_file(p);
      const fs::path parent = p.parent_path().empty() ? fs::path(".") : p.parent_path();
      Condition& c = condition(fs::weakly_canonical(parent).string(),
                               fs::exists(parent / "report.json") ? label_for(parent) : p.stem().string());
      if (std::find(panels.begin(), panels.end(), panel) != panels.end()) load_csv(p, panel, c);
    }
  }
  if (!o.labels.empty()) {
    const auto labels = split_list(o.labels);
    if (labels.size() != conds.size())
      throw UsageError(fmt::format("plot: {} labels given for {} conditions", labels.size(), conds.size()));
    for (std::size_t i = 0; i < conds.size(); ++i) conds[i].label = labels[i];
  }

  for (const auto& panel : panels) {
    bool any = false;
    const Line* first = nullptr;
    for (const auto& c : conds) {
      const auto it = c.panels.find(panel);
      if (it == c.panels.end()) continue;
      if (it->second.x.empty()) throw UsageError(fmt::format("plot: empty {} series for '{}'", panel, c.label));
      any = true;
      if (first == nullptr) first = &it->second;
      else if (first->x != it->second.x)
        ctx.err << fmt::format("warning: {} panel: '{}' has a different x axis; plotted anyway\n", panel, c.label);
    }
    if (!any) throw UsageError(fmt::format("plot: no input provides the '{}' panel", panel));
  }

  constexpr double W = 760, PH = 260, TOP = 40, L = 80, R = 700, PT = 30, PB = 50;
  const double legend_h = 20.0 * static_cast<double>(conds.size()) + 10.0;
  const double H = TOP + legend_h + PH * static_cast<double>(panels.size());
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      W, H, W, H);
  svg += "<g id=\"legend\">\n";
  for (std::size_t k = 0; k < conds.size(); ++k) {
    const double y = TOP + 20.0 * static_cast<double>(k);
    const char* color = kColors[k % std::size(kColors)];
    svg += fmt::format("<g class=\"legend-entry\"><line x1=\"{:.0f}\" y1=\"{:.1f}\" x2=\"{:.0f}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>"
                       "<text x=\"{:.0f}\" y=\"{:.1f}\">{}</text></g>\n",
                       L, y, L + 24, y, color, L + 30, y + 4, xml_escape(conds[k].label));
  }
  svg += "</g>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const std::string& panel = panels[pi];
    const PanelInfo info = panel_info(panel);
    const char letter = static_cast<char>('A' + pi);
    const double y0 = TOP + legend_h + PH * static_cast<double>(pi);
    const double top = y0 + PT, bottom = y0 + PH - PB;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& c : conds) {
      const auto it = c.panels.find(panel);
      if (it == c.panels.end()) continue;
      for (double v : it->second.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
      for (double v : it->second.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    const Ticks tx = nice_ticks(xmin, xmax), ty = nice_ticks(ymin, ymax);
    auto sx = [&](double v) { return L + (v - tx.lo) / (tx.hi - tx.lo) * (R - L); };
    auto sy = [&](double v) { return bottom - (v - ty.lo) / (ty.hi - ty.lo) * (bottom - top); };

    svg += fmt::format("<g class=\"panel\" id=\"panel-{}\">\n", letter);
    svg += fmt::format("<text x=\"{:.0f}\" y=\"{:.1f}\" font-size=\"14\" font-weight=\"bold\">{}) {}</text>\n", L - 60, y0 + 18, letter,
                       xml_escape(info.title));
    svg += fmt::format("<rect x=\"{:.0f}\" y=\"{:.1f}\" width=\"{:.0f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n", L, top, R - L,
                       bottom - top);
    for (double v = tx.lo; v <= tx.hi + 0.5 * tx.step; v += tx.step) {
      const double x = sx(v);
      svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.1f}\" x2=\"{:.2f}\" y2=\"{:.1f}\" stroke=\"black\"/>"
                         "<text x=\"{:.2f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.{}f}</text>\n",
                         x, bottom, x, bottom + 5, x, bottom + 18, v, tx.decimals);
    }
    for (double v = ty.lo; v <= ty.hi + 0.5 * ty.step; v += ty.step) {
      const double y = sy(v);
      svg += fmt::format("<line x1=\"{:.0f}\" y1=\"{:.2f}\" x2=\"{:.0f}\" y2=\"{:.2f}\" stroke=\"black\"/>"
                         "<text x=\"{:.0f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.{}f}</text>\n",
                         L - 5, y, L, y, L - 8, y + 4, v, ty.decimals);
    }
    svg += fmt::format("<text class=\"xlabel\" x=\"{:.0f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", 0.5 * (L + R), bottom + 36,
                       xml_escape(info.xlabel));
    const double ymid = 0.5 * (top + bottom);
    svg += fmt::format("<text class=\"ylabel\" x=\"{:.0f}\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 {:.0f} {:.1f})\">{}</text>\n",
                       L - 55, ymid, L - 55, ymid, xml_escape(info.ylabel));
    for (std::size_t k = 0; k < conds.size(); ++k) {
      const auto it = conds[k].panels.find(panel);
      if (it == conds[k].panels.end()) continue;
      std::string pts;
      for (std::size_t i = 0; i < it->second.x.size(); ++i)
        pts += fmt::format("{}{:.2f},{:.2f}", i ? " " : "", sx(it->second.x[i]), sy(it->second.y[i]));
      svg += fmt::format("<polyline class=\"series\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                         kColors[k % std::size(kColors)], pts);
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";

  const fs::path out = o.out;
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  write_text(out, svg);
  ctx.out << fmt::format("wrote {} ({} panel{}, {} condition{})\n", o.out, panels.size(), panels.size() == 1 ? "" : "s", conds.size(),
                         conds.size() == 1 ? "" : "s");
  return 0;
}

} // namespace conformetrics::cli
