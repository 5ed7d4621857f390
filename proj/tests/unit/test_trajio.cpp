#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "conformetrics/error.hpp"
#include "conformetrics/trajio/cfrm.hpp"
#include "conformetrics/trajio/files.hpp"
#include "conformetrics/trajio/report.hpp"
#include "conformetrics/trajio/structure.hpp"
#include "unit/helpers.hpp"

using namespace conformetrics;
using namespace conformetrics::trajio;
using testutil::atom;

namespace {

Trajectory small_traj(int nframes, std::uint64_t seed = 5) {
  std::vector<Atom> atoms;
  for (int c = 0; c < 2; ++c)
    for (int r = 1; r <= 2; ++r) {
      atoms.push_back(atom(atoms.size(), "N", "N", r, "GLN", c));
      atoms.push_back(atom(atoms.size(), "CA", "C", r, "GLN", c));
      atoms.push_back(atom(atoms.size(), "O", "O", r, "GLN", c));
    }
  Trajectory t;
  t.topology = Topology(atoms, {});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int f = 0; f < nframes; ++f) {
    Frame fr;
    fr.time = 10.0 * f;
    fr.box = Box::cubic(4.5);
    for (std::size_t i = 0; i < atoms.size(); ++i) fr.positions.emplace_back(u(rng), u(rng), u(rng));
    t.frames.push_back(fr);
  }
  return t;
}

const char* kGro =
    "test t= 2.50000\n"
    "    3\n"
    "    1GLN      N    1   1.000   2.000   3.000\n"
    "    1GLN     CA    2   1.100   2.100   3.100\n"
    "    1SOL     OW    3   0.500  -0.250  10.125\n"
    "   5.00000   5.00000   5.00000\n";

} // namespace

TEST_SUITE("trajio") {

TEST_CASE("GRO parse") {
  const Trajectory t = parse_gro(kGro);
  REQUIRE(t.frames.size() == 1);
  CHECK(t.frames[0].time == doctest::Approx(2.5));
  CHECK(t.topology.size() == 3);
  CHECK(t.topology[1].element == "C");
  CHECK(t.topology[2].residue_name == "SOL");
  CHECK(t.frames[0].positions[2][2] == doctest::Approx(10.125));
  CHECK(t.frames[0].box.lengths()[0] == doctest::Approx(5.0));
  // residue numbering restart starts a new chain
  CHECK(t.topology.chain_count() == 1);
}

TEST_CASE("GRO round trip is lossless at stored precision") {
  Trajectory t = small_traj(3);
  const std::string text = write_gro(t, "rt");
  const Trajectory back = parse_gro(text);
  CHECK(write_gro(back, "rt") == text);
  REQUIRE(back.frames.size() == 3);
  CHECK(back.topology.chain_count() == 2);
  for (std::size_t f = 0; f < 3; ++f)
    for (std::size_t i = 0; i < t.topology.size(); ++i)
      for (int k = 0; k < 3; ++k) CHECK(std::abs(back.frames[f].positions[i][k] - t.frames[f].positions[i][k]) <= 0.0005 + 1e-12);
}

TEST_CASE("GRO errors") {
  CHECK_THROWS_AS(parse_gro("t\n    2\n    1GLN      N    1   1.000   2.000   3.000\n   5.0 5.0 5.0\n"), FormatError);
  CHECK_THROWS_AS(parse_gro("t\n    1\n    1GLN      N    1  1.000    2.000   3.000\n   5.0 5.0 5.0\n"), FormatError);
  CHECK_THROWS_AS(parse_gro("t\n    1\n    1GLN      N    1   1.000   2.000   3.000\n   5.0 5.0 5.0 0 0 1 0 0 0\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_gro(""), FormatError);
}

TEST_CASE("PDB round trip and chains") {
  Trajectory t = small_traj(2);
  const std::string text = write_pdb(t);
  const Trajectory back = parse_pdb_multimodel(text);
  REQUIRE(back.frames.size() == 2);
  CHECK(back.topology.chain_count() == 2);
  CHECK(back.topology[1].element == "C");
  for (std::size_t i = 0; i < t.topology.size(); ++i)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(back.frames[1].positions[i][k] - t.frames[1].positions[i][k]) <= 0.00005 + 1e-12);
  CHECK(write_pdb(back) == text);
}

TEST_CASE("CFRM round trip is lossless at float precision") {
  const Trajectory t = small_traj(4);
  const std::string bytes = write_cfrm(t.frames, t.topology.size());
  CHECK(bytes.size() == kCfrmHeaderBytes + 4 * cfrm_frame_bytes(t.topology.size()));
  const CfrmData d = read_cfrm(bytes);
  REQUIRE(d.frames.size() == 4);
  CHECK(d.natoms == t.topology.size());
  for (std::size_t f = 0; f < 4; ++f) {
    CHECK(d.frames[f].time == t.frames[f].time);
    for (std::size_t i = 0; i < t.topology.size(); ++i)
      for (int k = 0; k < 3; ++k) CHECK(d.frames[f].positions[i][k] == static_cast<double>(static_cast<float>(t.frames[f].positions[i][k])));
  }
  CHECK(write_cfrm(d.frames, d.natoms) == bytes);

  CfrmWriter w(t.topology.size());
  for (const auto& fr : t.frames) w.append(fr);
  CHECK(w.bytes() == bytes);
  CHECK(w.frame_count() == 4);
}

TEST_CASE("CFRM errors") {
  const Trajectory t = small_traj(1);
  std::string bytes = write_cfrm(t.frames, t.topology.size());
  CHECK_THROWS_AS(read_cfrm(bytes.substr(0, bytes.size() - 3)), FormatError);
  CHECK_THROWS_AS(read_cfrm("CFRX" + bytes.substr(4)), FormatError);
  std::string v2 = bytes;
  v2[4] = 2;
  CHECK_THROWS_AS(read_cfrm(v2), FormatError);
  CHECK_THROWS_AS(read_cfrm("CF"), FormatError);
}

TEST_CASE("bond csv") {
  const auto bonds = parse_bonds_csv("i,j,length_nm,k\n0,1,0.1,1000\n1,2,0.15,2000\n", 3);
  REQUIRE(bonds.size() == 2);
  CHECK(bonds[1].k == doctest::Approx(2000));
  CHECK(parse_bonds_csv(write_bonds_csv(bonds), 3).size() == 2);
  CHECK_THROWS_AS(parse_bonds_csv("0,5,0.1,1\n", 3), FormatError);
  CHECK_THROWS_AS(parse_bonds_csv("0,1,0.1\n", 3), FormatError);
}

TEST_CASE("trajectory loading checks declared formats") {
  const auto dir = std::filesystem::temp_directory_path() / "cfm_trajio_test";
  std::filesystem::create_directories(dir);
  const Trajectory t = small_traj(3);
  write_file_atomic(dir / "top.gro", write_gro(Trajectory{t.topology, {t.frames[0]}}));
  write_file_atomic(dir / "traj.cfrm", write_cfrm(t.frames, t.topology.size()));
  const Trajectory back = load_trajectory({dir / "top.gro", dir / "traj.cfrm", FrameFormat::cfrm});
  CHECK(back.frames.size() == 3);
  CHECK_THROWS_AS(load_trajectory({dir / "top.gro", dir / "traj.cfrm", FrameFormat::gro}), FormatError);
  CHECK_THROWS_AS(load_trajectory({dir / "top.gro", dir / "top.gro", FrameFormat::cfrm}), FormatError);
  CHECK(format_from_extension("x.pdb") == FrameFormat::pdb);
  CHECK(parse_frame_format("cfrm") == FrameFormat::cfrm);
  CHECK_FALSE(parse_frame_format("xtc").has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("report rendering in angstrom") {
  CHECK(render_mean_sd(metrics::Metric::rg, 3.206, 0.069) == "32.06 ± 0.69");
  CHECK(render_mean_sd(metrics::Metric::sasa, 257.05, 3.32, true) == "25,705 ± 332");
  CHECK(render_mean_sd(metrics::Metric::hbonds, 24.0, 4.2) == "24.0 ± 4.2");
  CHECK(format_delta(37) == "+37");
  CHECK(format_delta(-11) == "-11");
  CHECK(format_delta(0) == "0");
  CHECK(to_report_units(metrics::Metric::sasa, 2.5) == doctest::Approx(250));
}

TEST_CASE("report JSON round trip and deltas") {
  auto make = [](const std::string& label, double rg) {
    MetricReport r;
    r.condition_label = label;
    MetricEntry e;
    e.metric = metrics::Metric::rg;
    e.selection = "protein";
    e.stats.mean = rg;
    e.stats.sd = 0.05;
    e.stats.n_frames = 10;
    e.stats.window = {80, 100};
    r.entries.push_back(e);
    return r;
  };
  const MetricReport control = make("control", 3.206), treated = make("tce", 4.386);
  const MetricReport back = parse_report_json(emit_report(treated, ReportFormat::json));
  CHECK(back.condition_label == "tce");
  REQUIRE(back.find(metrics::Metric::rg) != nullptr);
  CHECK(back.find(metrics::Metric::rg)->stats.mean == doctest::Approx(4.386));
  const std::string csv = emit_report(treated, ReportFormat::csv, &control, true);
  CHECK(csv.rfind(std::string(kReportCsvHeader), 0) == 0);
  CHECK(csv.find(",+37") != std::string::npos);
  CHECK_THROWS_AS(emit_report(treated, ReportFormat::csv, nullptr, true), UsageError);
  CHECK_THROWS_AS(parse_report_json("{not json"), FormatError);
}

}
