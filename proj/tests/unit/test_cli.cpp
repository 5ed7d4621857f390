#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "conformetrics/sim/toy_system.hpp"
#include "conformetrics/trajio/cfrm.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"
#include "conformetrics/trajio/structure.hpp"
#include "conformetrics_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace conformetrics;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) { return trajio::read_file(p); }

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

// Toy chains without solvent: a structure file, a bond list and a short CFRM.
struct Fixture {
  fs::path dir;
  std::size_t natoms = 0;

  explicit Fixture(const std::string& name, int frames = 3) : dir(fs::current_path() / ("cli_fixture_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto toy = sim::build_toy_chains(4, 3, 4.0, 2, 0.0);
    natoms = toy.topology.size();
    trajio::write_file_atomic(dir / "top.gro", trajio::write_gro(Trajectory{toy.topology, {toy.frame}}));
    trajio::write_file_atomic(dir / "bonds.csv", trajio::write_bonds_csv(toy.topology.bonds()));
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n01;
    std::vector<Frame> fr;
    for (int f = 0; f < frames; ++f) {
      Frame x = toy.frame;
      x.time = 10.0 * f;
      for (auto& p : x.positions) p += 0.01 * Vec3(n01(rng), n01(rng), n01(rng));
      fr.push_back(x);
    }
    trajio::write_file_atomic(dir / "traj.cfrm", trajio::write_cfrm(fr, natoms));
  }
  std::string p(const std::string& f) const { return (dir / f).string(); }
  std::vector<std::string> analyze(const std::string& out, const std::string& metrics) const {
    return {"analyze", "--topology", p("top.gro"), "--traj", p("traj.cfrm"), "--bonds", p("bonds.csv"), "--reference", p("top.gro"),
            "--metrics", metrics, "--out", p(out), "--workers", "1"};
  }
};

void write_report(const fs::path& path, const std::string& label, double rg, double sasa) {
  trajio::MetricReport r;
  r.condition_label = label;
  for (auto [m, v] : {std::pair{metrics::Metric::rg, rg}, std::pair{metrics::Metric::sasa, sasa}}) {
    trajio::MetricEntry e;
    e.metric = m;
    e.selection = "protein";
    e.stats.mean = v;
    e.stats.sd = 0.1;
    e.stats.n_frames = 5;
    e.stats.window = {0, 10};
    r.entries.push_back(e);
  }
  fs::create_directories(path.parent_path());
  trajio::write_file_atomic(path, trajio::emit_report(r, trajio::ReportFormat::json));
}

} // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"analyze", "--no-such-flag"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"--version"}).code == 0);
}

TEST_CASE("analyze a 3-frame CFRM for rg") {
  Fixture fx("rg");
  auto args = fx.analyze("out", "rg");
  args.insert(args.end(), {"--window-start-ps", "0"});
  const auto r = run_cli(args);
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string csv = slurp(fx.dir / "out" / "series_rg.csv");
  CHECK(csv.rfind("time_ps,value,scope\n", 0) == 0);
  CHECK(count(csv, ",total\n") == 3);
  CHECK(count(csv, ",chain 0\n") == 3);
  CHECK(count(csv, ",chain 3\n") == 3);
  CHECK(fs::exists(fx.dir / "out" / "manifest.json"));
  CHECK(fs::exists(fx.dir / "out" / "report.json"));
}

TEST_CASE("window beyond the trajectory names both bounds") {
  Fixture fx("window");
  auto args = fx.analyze("out", "rg");
  args.insert(args.end(), {"--window-start-ps", "5", "--window-end-ps", "99"});
  const auto r = run_cli(args);
  CHECK(r.code == 2);
  CHECK(r.err.find("99") != std::string::npos);
  CHECK(r.err.find("20") != std::string::npos);
}

TEST_CASE("rmsd without a reference is a usage error") {
  Fixture fx("noref");
  const auto r = run_cli({"analyze", "--topology", fx.p("top.gro"), "--traj", fx.p("traj.cfrm"), "--metrics", "rmsd", "--out", fx.p("o")});
  CHECK(r.code == 2);
}

TEST_CASE("malformed input files exit with 3") {
  Fixture fx("bad");
  trajio::write_file_atomic(fx.dir / "broken.cfrm", "CFRM\x01");
  const auto r = run_cli({"analyze", "--topology", fx.p("top.gro"), "--traj", fx.p("broken.cfrm"), "--metrics", "rg", "--out", fx.p("o")});
  CHECK(r.code == 3);
}

TEST_CASE("five-metric analyze, manifest re-run is byte identical") {
  Fixture fx("five", 6);
  const auto r = run_cli(fx.analyze("out", "rmsd,rg,sasa,hbonds,rmsf"));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  for (const char* f : {"series_rmsd.csv", "series_rg.csv", "series_sasa.csv", "series_hbonds.csv", "rmsf.csv", "report.txt",
                        "report.csv"})
    CHECK(fs::exists(fx.dir / "out" / f));
  const std::string txt = slurp(fx.dir / "out" / "report.txt");
  CHECK(txt.find("temporal SD within a single trajectory, not replicate uncertainty") != std::string::npos);
  const auto rep = trajio::parse_report_json(slurp(fx.dir / "out" / "report.json"));
  CHECK(rep.entries.size() == 4);

  std::map<std::string, std::string> before;
  for (const auto& e : fs::directory_iterator(fx.dir / "out")) before[e.path().filename().string()] = slurp(e.path());
  const auto again = run_cli({"analyze", "--manifest", fx.p("out/manifest.json"), "--workers", "2"});
  REQUIRE_MESSAGE(again.code == 0, again.err);
  for (const auto& [name, bytes] : before) CHECK_MESSAGE(slurp(fx.dir / "out" / name) == bytes, name);
}

TEST_CASE("report deltas and degenerate cases") {
  const fs::path dir = fs::current_path() / "cli_report";
  fs::remove_all(dir);
  write_report(dir / "a" / "report.json", "control", 3.206, 257.05);
  write_report(dir / "b" / "report.json", "tce", 4.386, 377.29);
  write_report(dir / "c" / "report.json", "same", 3.206, 257.05);
  auto r = run_cli({"report", (dir / "a").string(), (dir / "b" / "report.json").string(), (dir / "c").string(), "--control", "control",
                "--out", (dir / "cmp").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string txt = slurp(dir / "cmp" / "comparison.txt");
  CHECK(txt.find("+37%") != std::string::npos);
  CHECK(txt.find("+47%") != std::string::npos);
  CHECK(txt.find(" 0%") != std::string::npos);
  CHECK(txt.find("ΔRg (%)") != std::string::npos);
  CHECK(txt.find("32.06 ± 1.00") != std::string::npos);

  r = run_cli({"report", (dir / "a").string(), "--out", (dir / "single").string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "single" / "comparison.txt").find("Δ") == std::string::npos);

  CHECK(run_cli({"report", (dir / "a").string(), (dir / "c").string(), "--control", "nobody"}).code == 2);
  write_report(dir / "d" / "report.json", "control", 3.0, 250.0);
  CHECK(run_cli({"report", (dir / "a").string(), (dir / "d").string()}).code == 2);
}

TEST_CASE("plot panels, legend and determinism") {
  Fixture fx("plot", 6);
  for (const char* c : {"c1", "c2", "c3"}) REQUIRE(run_cli(fx.analyze(c, "rmsd,rg,sasa,hbonds,rmsf")).code == 0);
  auto r = run_cli({"plot", fx.p("c1/series_rg.csv"), "--panels", "rg", "--out", fx.p("rg.svg")});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const std::string one = slurp(fx.dir / "rg.svg");
  CHECK(one.find("Rg (Å)") != std::string::npos);
  CHECK(count(one, "class=\"panel\"") == 1);

  const std::vector<std::string> args{"plot", fx.p("c1"), fx.p("c2"), fx.p("c3"), "--labels", "a,b,c", "--panels",
                                      "hbonds,rmsf,sasa,rg,rmsd", "--out", fx.p("all.svg")};
  REQUIRE(run_cli(args).code == 0);
  const std::string all = slurp(fx.dir / "all.svg");
  CHECK(count(all, "class=\"panel\"") == 5);
  CHECK(count(all, "class=\"legend-entry\"") == 3);
  CHECK(count(all, "class=\"series\"") == 15);
  CHECK(all.find("A) ") < all.find("E) "));
  CHECK(all.find("id=\"panel-A\"") < all.find("Rg (Å)"));
  REQUIRE(run_cli(args).code == 0);
  CHECK(slurp(fx.dir / "all.svg") == all);

  CHECK(run_cli({"plot", fx.p("c1"), "--panels", "", "--out", fx.p("x.svg")}).code == 2);
  fs::create_directories(fx.dir / "empty");
  trajio::write_file_atomic(fx.dir / "empty" / "series_rg.csv", "time_ps,value,scope\n");
  CHECK(run_cli({"plot", fx.p("empty/series_rg.csv"), "--panels", "rg", "--out", fx.p("x.svg")}).code != 0);
}

TEST_CASE("simulate: schema errors and determinism") {
  const fs::path dir = fs::current_path() / "cli_sim";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto lj = sim::build_lj_fluid(2, 20.0);
  trajio::write_file_atomic(dir / "lj.gro", trajio::write_gro(Trajectory{lj.topology, {lj.frame}}));
  trajio::write_file_atomic(dir / "bad.cfg", "[run]\nseed = 1\ncolour = red\n[forcefield]\nlj.Ar = 0.996 0.34\n[stage.1]\ntype = minimize\n");
  auto r = run_cli({"simulate", "--config", (dir / "bad.cfg").string(), "--topology", (dir / "lj.gro").string(), "--out", (dir / "o").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("'colour'") != std::string::npos);
  CHECK(r.err.find("dt_ps") != std::string::npos);

  trajio::write_file_atomic(dir / "ok.cfg",
                            "[run]\nseed = 3\n[forcefield]\ncutoff_nm = 0.5\nlj.Ar = 0.996 0.34\n[neighbor]\nbuffer_nm = 0.05\n"
                            "[stage.1]\ntype = minimize\n[stage.2]\ntype = nvt\nduration_ps = 0.1\ntemperature_K = 120\nstride = 10\n");
  for (const char* o : {"o1", "o2"}) {
    r = run_cli({"simulate", "--config", (dir / "ok.cfg").string(), "--topology", (dir / "lj.gro").string(), "--out", (dir / o).string(),
             "--workers", "1"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
  }
  CHECK(slurp(dir / "o1" / "trajectory.cfrm") == slurp(dir / "o2" / "trajectory.cfrm"));
  CHECK(slurp(dir / "o1" / "log.csv") == slurp(dir / "o2" / "log.csv"));
  CHECK(fs::exists(dir / "o1" / "manifest.json"));
  const auto frames = trajio::read_cfrm(slurp(dir / "o1" / "trajectory.cfrm"));
  CHECK(frames.frames.size() == 2 + 50 / 10);
}
