#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conformetrics/error.hpp"
#include "conformetrics/metrics/deviation.hpp"
#include "conformetrics/metrics/gyration.hpp"
#include "conformetrics/metrics/hbonds.hpp"
#include "conformetrics/metrics/sasa.hpp"
#include "conformetrics/metrics/superpose.hpp"
#include "conformetrics/selection.hpp"
#include "oracles.hpp"
#include "unit/helpers.hpp"

using namespace conformetrics;
using namespace conformetrics::metrics;
using testutil::atom;

namespace {

Topology carbons(std::size_t n, int chains = 1) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < n; ++i)
    atoms.push_back(atom(i, "CA", "C", static_cast<int>(i % (n / chains)) + 1, "GLN", static_cast<int>(i / (n / chains))));
  return Topology(atoms, {});
}

// Random polar/hydrogen soup: donors carry a hydrogen at ~0.1 nm, some bonded in the topology.
std::pair<Topology, Frame> hbond_soup(std::mt19937_64& rng, std::size_t target, double box) {
  std::uniform_real_distribution<double> u(0, box), u01(0, 1);
  std::normal_distribution<double> n01;
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  Frame fr;
  fr.box = u01(rng) < 0.7 ? Box::cubic(box) : Box();
  while (atoms.size() + 2 <= target) {
    const int chain = static_cast<int>(atoms.size() * 3 / target);
    const Vec3 x(u(rng), u(rng), u(rng));
    const bool oxygen = u01(rng) < 0.5;
    atoms.push_back(atom(atoms.size(), oxygen ? "O" : "N", oxygen ? "O" : "N", 1, "GLN", chain));
    fr.positions.push_back(x);
    if (u01(rng) < 0.6) {
      const Vec3 dir = Vec3(n01(rng), n01(rng), n01(rng)).normalized();
      atoms.push_back(atom(atoms.size(), "H", "H", 1, "GLN", chain));
      fr.positions.push_back(x + (0.09 + 0.03 * u01(rng)) * dir);
      if (u01(rng) < 0.5) bonds.push_back(Bond{atoms.size() - 2, atoms.size() - 1, 0.1, 1000});
    }
  }
  atoms.push_back(atom(atoms.size(), "H", "H", 1, "GLN", 2));
  fr.positions.push_back(Vec3(u(rng), u(rng), u(rng)));
  return {Topology(atoms, bonds), fr};
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("superposition recovers rigid motions") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto ref = testutil::random_cloud(12, 1.0, rng);
    const Eigen::Matrix3d r = testutil::random_rotation(rng);
    const Vec3 shift(0.3 * t, -1.0, 2.0);
    std::vector<Vec3> mob;
    for (const auto& p : ref) mob.push_back(r * p + shift);
    const Superposition s = superpose(mob, ref);
    CHECK(s.rmsd < 1e-10);
    CHECK(s.rotation.determinant() == doctest::Approx(1.0));
    CHECK((apply(s, mob[3]) - ref[3]).norm() < 1e-10);
  }
}

TEST_CASE("noisy superposition matches the quaternion oracle") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise(0, 0.05);
  for (int t = 0; t < 5; ++t) {
    const auto ref = testutil::random_cloud(15, 1.0, rng);
    const Eigen::Matrix3d r = testutil::random_rotation(rng);
    std::vector<Vec3> mob;
    for (const auto& p : ref) mob.push_back(r * p + Vec3(noise(rng), noise(rng), noise(rng)) + Vec3(1, 2, 3));
    CHECK(std::abs(superpose(mob, ref).rmsd - oracle::quaternion_grid_rmsd(mob, ref)) < 1e-6);
  }
}

TEST_CASE("superposition rejects degenerate input") {
  std::vector<Vec3> line{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
  CHECK_THROWS_AS(superpose(line, line), NumericError);
  std::vector<Vec3> two{Vec3(0, 0, 0), Vec3(1, 0, 0)};
  CHECK_THROWS(superpose(two, two));
  CHECK(rmsd_nofit(two, std::vector<Vec3>{Vec3(0, 0, 1), Vec3(1, 0, 1)}) == doctest::Approx(1.0));
}

TEST_CASE("rmsd series with and without fit") {
  const Topology top = carbons(5);
  Trajectory traj{top, {}};
  std::mt19937_64 rng(3);
  Frame ref;
  ref.positions = testutil::random_cloud(5, 1.0, rng);
  const Eigen::Matrix3d r = testutil::random_rotation(rng);
  for (int f = 0; f < 3; ++f) {
    Frame fr;
    fr.time = f;
    for (const auto& p : ref.positions) fr.positions.push_back(r * p + Vec3(f, 0, 0));
    traj.frames.push_back(fr);
  }
  const auto fit = rmsd_series(traj, select_all(top), ref, true);
  for (double v : fit.values) CHECK(v < 1e-10);
  const auto raw = rmsd_series(traj, select_all(top), ref, false);
  CHECK(raw.values[1] > 0.1);
  CHECK(raw.times == std::vector<double>{0, 1, 2});
}

TEST_CASE("radius of gyration") {
  const Topology top = carbons(4, 2);
  Frame fr;
  fr.positions = {Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(10, 0, 0), Vec3(10, 4, 0)};
  const Selection all = select_all(top);
  const auto per = radius_of_gyration_per_chain(fr, all, top);
  REQUIRE(per.size() == 2);
  CHECK(per[0].second == doctest::Approx(1.0));
  CHECK(per[1].second == doctest::Approx(2.0));
  // equal masses: Rg^2 = mean squared distance from the centroid
  const Vec3 c(5.5, 1.0, 0);
  double s = 0;
  for (const auto& p : fr.positions) s += (p - c).squaredNorm();
  CHECK(radius_of_gyration(fr, all, top) == doctest::Approx(std::sqrt(s / 4)));
  Trajectory traj{top, {fr}};
  const auto series = rg_series(traj, all);
  REQUIRE(series.size() == 3);
  CHECK(series[0].scope == "total");
  CHECK(series[2].scope == chain_scope(1));
}

TEST_CASE("sasa single sphere and two-sphere caps") {
  const Topology one({atom(0, "C", "C")}, {});
  Frame fr;
  fr.positions = {Vec3(1, 1, 1)};
  SasaParams p;
  const double r = 0.17 + 0.14;
  CHECK(sasa(fr, select_all(one), one, p).total == doctest::Approx(4 * std::numbers::pi * r * r).epsilon(0.005));

  const Topology two({atom(0, "C", "C"), atom(1, "O", "O")}, {});
  for (double d : {0.2, 0.35, 0.5}) {
    Frame f2;
    f2.positions = {Vec3(0, 0, 0), Vec3(d, 0, 0)};
    const double exact = oracle::two_sphere_area(0.31, 0.152 + 0.14, d);
    CHECK(sasa(f2, select_all(two), two, p).total == doctest::Approx(exact).epsilon(0.01));
  }
}

TEST_CASE("sasa of a small cluster matches Monte Carlo") {
  std::mt19937_64 rng(4);
  std::vector<Atom> atoms;
  const char* el[] = {"C", "N", "O", "S"};
  for (std::size_t i = 0; i < 8; ++i) atoms.push_back(atom(i, el[i % 4], el[i % 4]));
  const Topology top(atoms, {});
  Frame fr;
  fr.positions = testutil::random_cloud(8, 0.3, rng);
  SasaParams p;
  std::vector<double> radii;
  for (const auto& a : atoms) radii.push_back(*p.radii.radius(a.element) + p.probe_radius);
  const auto mc = oracle::monte_carlo_sasa(fr.positions, radii, 100000, 9);
  double mc_total = 0;
  for (double a : mc) mc_total += a;
  CHECK(sasa(fr, select_all(top), top, p).total == doctest::Approx(mc_total).epsilon(0.01));
}

TEST_CASE("sasa respects periodic images") {
  const Topology two({atom(0, "C", "C"), atom(1, "C", "C")}, {});
  Frame fr;
  fr.box = Box::cubic(3.0);
  fr.positions = {Vec3(0.05, 1, 1), Vec3(2.85, 1, 1)};
  const double exact = oracle::two_sphere_area(0.31, 0.31, 0.2);
  CHECK(sasa(fr, select_all(two), two, SasaParams{}).total == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("spiral points are unit vectors with zero mean") {
  const auto pts = spiral_sphere_points(960);
  REQUIRE(pts.size() == 960);
  Vec3 m = Vec3::Zero();
  for (const auto& p : pts) {
    CHECK(p.norm() == doctest::Approx(1.0));
    m += p;
  }
  CHECK(m.norm() / 960 < 1e-2);
}

TEST_CASE("hbond count matches brute force") {
  std::mt19937_64 rng(7);
  HBondCriteria c;
  std::size_t total = 0;
  for (int t = 0; t < 60; ++t) {
    auto [top, fr] = hbond_soup(rng, 40 + t, 1.4);
    const Selection all = select_all(top);
    for (auto scope : {HBondScope::all, HBondScope::intra_chain}) {
      const auto got = hbond_count(fr, all, top, c, scope);
      const auto want = oracle::brute_force_hbonds(fr, all.indices, top, c, scope == HBondScope::intra_chain);
      CHECK(got.total == want);
      total += want;
    }
  }
  CHECK(total > 20);
}

TEST_CASE("hbond geometry thresholds") {
  const Topology top({atom(0, "N", "N"), atom(1, "H", "H"), atom(2, "O", "O")}, {Bond{0, 1, 0.1, 1000}});
  Frame fr;
  fr.positions = {Vec3(0, 0, 0), Vec3(0.1, 0, 0), Vec3(0.29, 0, 0)};
  HBondCriteria c;
  CHECK(hbond_count(fr, select_all(top), top, c, HBondScope::all).total == 1);
  fr.positions[2] = Vec3(0.31, 0, 0);
  CHECK(hbond_count(fr, select_all(top), top, c, HBondScope::all).total == 0);
  // bend to ~140 degrees at H
  fr.positions[2] = Vec3(0.1 + 0.15 * std::cos(0.7), 0.15 * std::sin(0.7), 0);
  CHECK(hbond_count(fr, select_all(top), top, c, HBondScope::all).total == 0);
  const Topology noh({atom(0, "N", "N"), atom(1, "O", "O")}, {});
  Frame f2;
  f2.positions = {Vec3(0, 0, 0), Vec3(0.28, 0, 0)};
  CHECK_THROWS_AS(hbond_count(f2, select_all(noh), noh, c, HBondScope::all), UsageError);
}

TEST_CASE("rmsf of a rigidly moving body is zero; of one vibrating atom is its amplitude") {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < 6; ++i) atoms.push_back(atom(i, "CA", "C", static_cast<int>(i) + 1));
  const Topology top(atoms, {});
  std::mt19937_64 rng(8);
  const auto base = testutil::random_cloud(6, 1.0, rng);
  Trajectory rigid{top, {}}, wobble{top, {}};
  for (int f = 0; f < 20; ++f) {
    const Eigen::Matrix3d r = testutil::random_rotation(rng);
    Frame a, b;
    a.time = b.time = f;
    for (const auto& p : base) a.positions.push_back(r * p + Vec3(f, 0, 0));
    b.positions = base;
    b.positions[5] += Vec3(0, 0, f % 2 ? 0.01 : -0.01);
    rigid.frames.push_back(a);
    wobble.frames.push_back(b);
  }
  const auto pr = rmsf_profile(rigid, select_all(top));
  for (double v : pr.rmsf) CHECK(v < 1e-9);
  RmsfOptions opt;
  opt.fit_selection = select(top, "resid 1-5");
  const auto pw = rmsf_profile(wobble, select_all(top), opt);
  REQUIRE(pw.rmsf.size() == 6);
  CHECK(pw.rmsf[5] == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(pw.rmsf[0] < 1e-9);
}

}
