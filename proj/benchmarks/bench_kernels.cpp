#include <random>

#include <benchmark/benchmark.h>

#include "conformetrics/metrics/hbonds.hpp"
#include "conformetrics/metrics/sasa.hpp"
#include "conformetrics/selection.hpp"
#include "conformetrics/sim/forces.hpp"
#include "conformetrics/sim/neighbor_list.hpp"
#include "conformetrics/sim/toy_system.hpp"

using namespace conformetrics;

namespace {

sim::ToySystem toy() { return sim::build_toy_chains(4, 6, 3.2, 2024, 24.0); }

void BM_sasa_protein(benchmark::State& st) {
  const auto t = toy();
  const Selection sel = select(t.topology, "protein");
  metrics::SasaParams p;
  p.sphere_points = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(metrics::sasa(t.frame, sel, t.topology, p).total);
  st.counters["atoms"] = static_cast<double>(sel.size());
}
BENCHMARK(BM_sasa_protein)->Arg(240)->Arg(960)->Unit(benchmark::kMillisecond);

void BM_hbonds_protein(benchmark::State& st) {
  const auto t = toy();
  const Selection sel = select(t.topology, "protein");
  for (auto _ : st)
    benchmark::DoNotOptimize(metrics::hbond_count(t.frame, sel, t.topology, metrics::HBondCriteria{}, metrics::HBondScope::intra_chain).total);
}
BENCHMARK(BM_hbonds_protein)->Unit(benchmark::kMicrosecond);

void BM_neighbor_build_lj(benchmark::State& st) {
  const auto lj = sim::build_lj_fluid(static_cast<int>(st.range(0)), 20.35);
  const sim::ForceField ff(lj.topology, sim::argon_forcefield(0.75));
  const sim::SimState s = sim::SimState::from_frame(lj.frame, 1);
  sim::NeighborList nl(0.75, 0.1);
  for (auto _ : st) {
    nl.build(s, ff);
    benchmark::DoNotOptimize(nl.pairs().size());
  }
  st.counters["atoms"] = static_cast<double>(s.size());
}
BENCHMARK(BM_neighbor_build_lj)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_forces_lj(benchmark::State& st) {
  const auto lj = sim::build_lj_fluid(static_cast<int>(st.range(0)), 20.35);
  const sim::ForceField ff(lj.topology, sim::argon_forcefield(0.75));
  const sim::SimState s = sim::SimState::from_frame(lj.frame, 1);
  sim::NeighborList nl(0.75, 0.1);
  nl.build(s, ff);
  std::vector<Vec3> f;
  for (auto _ : st) benchmark::DoNotOptimize(sim::compute_forces(s, ff, nl, nullptr, f));
  st.counters["pairs"] = static_cast<double>(nl.pairs().size());
}
BENCHMARK(BM_forces_lj)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
