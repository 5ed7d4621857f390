#include "conformetrics/metrics/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/metrics/superpose.hpp"
#include "conformetrics/parallel.hpp"

namespace conformetrics::metrics {
namespace {

std::vector<Vec3> gather(const Frame& f, const std::vector<std::size_t>& idx) {
  std::vector<Vec3> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(f.positions[i]);
  return out;
}

} // namespace

MetricSeries rmsd_series(const Trajectory& traj, const Selection& sel, const Frame& reference, bool fit, unsigned workers) {
  if (reference.positions.size() != traj.topology.size())
    throw UsageError(fmt::format("rmsd: reference has {} atoms, topology has {}", reference.positions.size(), traj.topology.size()));
  if (fit && sel.size() < 3) throw UsageError("rmsd: fitting needs a selection of at least 3 atoms");
  MetricSeries s;
  s.metric = Metric::rmsd;
  s.scope = "total";
  s.times.resize(traj.frames.size());
  s.values.resize(traj.frames.size());
  const auto ref = gather(reference, sel.indices);
  parallel_for(traj.frames.size(), workers, [&](std::size_t f) {
    const auto mob = gather(traj.frames[f], sel.indices);
    s.times[f] = traj.frames[f].time;
    s.values[f] = fit ? superpose(mob, ref).rmsd : rmsd_nofit(mob, ref);
  });
  return s;
}

RmsfProfile rmsf_profile(const Trajectory& traj, const Selection& sel, const RmsfOptions& options) {
  if (traj.frames.size() < 2) throw UsageError("rmsf: at least 2 frames are required");
  const auto& fit_idx = options.fit_selection ? options.fit_selection->indices : sel.indices;
  if (fit_idx.size() < 3) throw UsageError("rmsf: fitting needs at least 3 atoms");
  const std::size_t nf = traj.frames.size();
  const std::size_t na = sel.size();

  struct Pass {
    std::vector<std::vector<Vec3>> aligned; // per frame, measured atoms
    std::vector<Vec3> avg;                  // measured atoms
    std::vector<Vec3> avg_fit;              // fitting atoms
  };
  auto run_pass = [&](const std::vector<Vec3>& target_fit) {
    Pass p;
    p.aligned.resize(nf);
    p.avg.assign(na, Vec3::Zero());
    p.avg_fit.assign(fit_idx.size(), Vec3::Zero());
    for (std::size_t f = 0; f < nf; ++f) {
      const Superposition s = superpose(gather(traj.frames[f], fit_idx), target_fit);
      auto& a = p.aligned[f];
      a.reserve(na);
      for (std::size_t i : sel.indices) a.push_back(apply(s, traj.frames[f].positions[i]));
      for (std::size_t i = 0; i < na; ++i) p.avg[i] += a[i];
      for (std::size_t i = 0; i < fit_idx.size(); ++i) p.avg_fit[i] += apply(s, traj.frames[f].positions[fit_idx[i]]);
    }
    for (auto& v : p.avg) v /= static_cast<double>(nf);
    for (auto& v : p.avg_fit) v /= static_cast<double>(nf);
    return p;
  };

  // Pass 1 fits onto the first frame; pass 2 refits onto the resulting average.
  const Pass pass1 = run_pass(gather(traj.frames[0], fit_idx));
  const Pass pass2 = run_pass(pass1.avg_fit);
  const auto& aligned2 = pass2.aligned;
  const auto& avg2 = pass2.avg;

  std::vector<double> atom_rmsf(na, 0.0);
  for (const auto& a : aligned2)
    for (std::size_t i = 0; i < na; ++i) atom_rmsf[i] += (a[i] - avg2[i]).squaredNorm();
  for (auto& v : atom_rmsf) v = std::sqrt(v / static_cast<double>(nf));

  // (chain, residue) -> mean over atoms.
  std::map<int, std::map<int, std::pair<double, int>>> per_chain;
  for (std::size_t k = 0; k < na; ++k) {
    const Atom& atom = traj.topology[sel.indices[k]];
    auto& slot = per_chain[atom.chain_id][atom.residue_seq];
    slot.first += atom_rmsf[k];
    slot.second += 1;
  }
  RmsfProfile prof;
  const auto& first = per_chain.begin()->second;
  for (const auto& [res, _] : first) prof.residue_seq.push_back(res);
  prof.rmsf.assign(prof.residue_seq.size(), 0.0);
  for (const auto& [chain, residues] : per_chain) {
    if (residues.size() != first.size() ||
        !std::equal(residues.begin(), residues.end(), first.begin(), [](const auto& a, const auto& b) { return a.first == b.first; }))
      throw UsageError(fmt::format("rmsf: chain {} residue numbering differs from chain {}", chain, per_chain.begin()->first));
    std::size_t r = 0;
    for (const auto& [res, acc] : residues) prof.rmsf[r++] += acc.first / acc.second;
  }
  for (auto& v : prof.rmsf) v /= static_cast<double>(per_chain.size());
  return prof;
}

} // namespace conformetrics::metrics
