#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "conformetrics/box.hpp"
#include "conformetrics/cell_grid.hpp"
#include "conformetrics/elements.hpp"
#include "conformetrics/error.hpp"
#include "conformetrics/parallel.hpp"
#include "conformetrics/selection.hpp"
#include "oracles.hpp"
#include "unit/helpers.hpp"

using namespace conformetrics;
using testutil::atom;

namespace {

Topology two_chain_peptide() {
  std::vector<Atom> atoms;
  const char* names[] = {"N", "H", "CA", "C", "O"};
  const char* elems[] = {"N", "H", "C", "C", "O"};
  for (int chain = 0; chain < 2; ++chain)
    for (int res = 1; res <= 3; ++res)
      for (int k = 0; k < 5; ++k) atoms.push_back(atom(atoms.size(), names[k], elems[k], res, "GLN", chain));
  atoms.push_back(atom(atoms.size(), "OW", "O", 1, "SOL", 2));
  return Topology(atoms, {});
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("minimum image lies in (-L/2, L/2]") {
  const Box box = Box::rectangular(2.0, 3.0, 0.0);
  const Vec3 d = minimum_image(Vec3(1.5, -1.6, 7.0), box);
  CHECK(d[0] == doctest::Approx(-0.5));
  CHECK(d[1] == doctest::Approx(1.4));
  CHECK(d[2] == doctest::Approx(7.0));  // non-periodic axis untouched
  CHECK(minimum_image(Vec3(-1.0, 0, 0), box)[0] == doctest::Approx(1.0));
  CHECK(minimum_image(Vec3(1.0, 0, 0), box)[0] == doctest::Approx(1.0));
  CHECK_THROWS_AS(minimum_image(Vec3::Zero(), Box((Eigen::Matrix3d() << 1, 0.1, 0, 0, 1, 0, 0, 0, 1).finished())),
                  UsageError);
}

TEST_CASE("wrap_into_box keeps position + image*L") {
  const Box box = Box::cubic(2.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const Vec3 p(u(rng), u(rng), u(rng));
    Eigen::Vector3i img;
    const Vec3 w = wrap_into_box(p, box, &img);
    for (int k = 0; k < 3; ++k) {
      CHECK(w[k] >= 0.0);
      CHECK(w[k] < 2.0);
      CHECK(w[k] + 2.0 * img[k] == doctest::Approx(p[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("box volume and scaling") {
  const Box b = Box::rectangular(1, 2, 3);
  CHECK(b.volume() == doctest::Approx(6));
  CHECK(b.scaled(2).volume() == doctest::Approx(48));
  CHECK(b.fully_periodic());
  CHECK_FALSE(Box().fully_periodic());
}

TEST_CASE("selection keywords") {
  const Topology top = two_chain_peptide();
  CHECK(select(top, "all").size() == 31);
  CHECK(select(top, "protein").size() == 30);
  CHECK(select(top, "not protein").size() == 1);
  CHECK(select(top, "backbone").size() == 18);
  CHECK(select(top, "calpha").size() == 6);
  CHECK(select(top, "chain 1 and calpha").size() == 3);
  CHECK(select(top, "resid 2-3 and name CA").size() == 4);
  CHECK(select(top, "resid 2").size() == 10);
  CHECK(select(top, "element h").size() == 6);
  CHECK(select(top, "resname SOL").size() == 1);
  CHECK(select(top, "NOT (chain 0 OR chain 1)").indices == std::vector<std::size_t>{30});
  CHECK(select(top, "protein and not element H").size() == 24);
  // and binds tighter than or
  CHECK(select(top, "name CA or name N and chain 1").size() == 9);
}

TEST_CASE("selection errors carry positions") {
  const Topology top = two_chain_peptide();
  try {
    select(top, "name CA and");
    FAIL("expected a syntax error");
  } catch (const SelectionSyntaxError& e) {
    CHECK(e.position() == 11);
  }
  try {
    select(top, "(chain 0 or chain 1");
    FAIL("expected a syntax error");
  } catch (const SelectionSyntaxError& e) {
    CHECK(e.position() == 19);
  }
  CHECK_THROWS_AS(select(top, "bogus 3"), SelectionSyntaxError);
  CHECK_THROWS_AS(select(top, "resid 5-2"), SelectionSyntaxError);
  CHECK_THROWS_AS(select(top, "name $"), SelectionSyntaxError);
  CHECK_THROWS_AS(select(top, "chain 7"), UsageError);
}

TEST_CASE("center of mass is mass weighted") {
  std::vector<Atom> atoms{atom(0, "C", "C"), atom(1, "H", "H")};
  const Topology top(atoms, {});
  Frame f;
  f.positions = {Vec3(0, 0, 0), Vec3(1, 0, 0)};
  const Vec3 c = center_of_mass(f, select_all(top), top);
  CHECK(c[0] == doctest::Approx(1.008 / (12.011 + 1.008)));
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(Topology({atom(1, "C", "C")}, {}), FormatError);
  CHECK_THROWS_AS(Topology({atom(0, "C", "C", 1, "X", 1)}, {}), FormatError);
  CHECK_THROWS_AS(Topology({atom(0, "C", "C")}, {Bond{0, 0, 0.1, 1}}), FormatError);
  Atom massless = atom(0, "C", "C");
  massless.mass = 0;
  CHECK_THROWS_AS(Topology({massless}, {}), FormatError);
  const Topology ok({atom(0, "C", "C"), atom(1, "O", "O")}, {Bond{0, 1, 0.12, 1000}});
  CHECK(ok.bonded_neighbors()[0] == std::vector<std::size_t>{1});
  CHECK(ok.chain_count() == 1);
}

TEST_CASE("elements") {
  CHECK(normalize_element("CL") == "Cl");
  CHECK(normalize_element("c") == "C");
  CHECK(element_from_atom_name("CA", "GLN") == "C");
  CHECK(element_from_atom_name("NA", "NA") == "Na");
  CHECK(element_from_atom_name("CL", "CL") == "Cl");
  CHECK(element_data("O")->vdw_radius == doctest::Approx(0.152));
  CHECK_FALSE(element_data("Xx").has_value());
  const RadiiTable t = RadiiTable::from_csv("element,radius_nm\nC,0.2\n", RadiiTable::bondi());
  CHECK(*t.radius("C") == doctest::Approx(0.2));
  CHECK(*t.radius("N") == doctest::Approx(0.155));
}

TEST_CASE("cell grid pairs match brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const bool periodic = trial % 3 != 0;
    const double l = 1.5 + 0.1 * (trial % 7);
    const Box box = periodic ? Box::cubic(l) : Box();
    std::uniform_real_distribution<double> u(0, l);
    std::vector<Vec3> x(150);
    for (auto& p : x) p = Vec3(u(rng), u(rng), u(rng));
    std::vector<std::size_t> all(x.size());
    std::iota(all.begin(), all.end(), 0);
    const double rc = 0.3 + 0.05 * (trial % 5);
    const CellGrid grid(x, all, box, rc);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> got;
    grid.for_each_pair([&](std::size_t i, std::size_t j, const Vec3&) { got.emplace_back(i, j); });
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::brute_force_pairs(x, box, rc));
  }
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw NumericError("x"); }), NumericError);
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}

TEST_CASE("error kinds map to exit codes") {
  CHECK(UsageError("x").exit_code() == 2);
  CHECK(FormatError("x").exit_code() == 3);
  CHECK(NumericError("x").exit_code() == 4);
}

}
