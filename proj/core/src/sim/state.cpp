#include "conformetrics/sim/state.hpp"

#include <cmath>

#include <fmt/format.h>

#include "conformetrics/error.hpp"
#include "conformetrics/units.hpp"

namespace conformetrics::sim {

SimState SimState::from_frame(const Frame& frame, std::uint64_t seed) {
  SimState s;
  s.box = frame.box;
  s.time = frame.time;
  s.positions = frame.positions;
  s.images.assign(frame.positions.size(), Eigen::Vector3i::Zero());
  s.velocities.assign(frame.positions.size(), Vec3::Zero());
  s.forces.assign(frame.positions.size(), Vec3::Zero());
  s.rng.seed(seed);
  s.wrap();
  return s;
}

std::vector<Vec3> SimState::unwrapped() const {
  std::vector<Vec3> out(positions.size());
  const Vec3 l = box.lengths();
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = positions[i] + images[i].cast<double>().cwiseProduct(l);
  return out;
}

Frame SimState::to_frame(bool unwrap) const {
  Frame f;
  f.time = time;
  f.box = box;
  f.positions = unwrap ? unwrapped() : positions;
  return f;
}

void SimState::wrap() {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Eigen::Vector3i shift;
    positions[i] = wrap_into_box(positions[i], box, &shift);
    images[i] += shift;
  }
}

void SimState::scale(double mu) {
  for (auto& x : positions) x *= mu;
  box = box.scaled(mu);
}

void SimState::check_finite(const char* where) const {
  auto bad = [](const std::vector<Vec3>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].allFinite()) return static_cast<long>(i);
    return -1L;
  };
  if (const long i = bad(positions); i >= 0) throw NumericError(fmt::format("{}: non-finite position for atom {} at t={} ps", where, i + 1, time));
  if (const long i = bad(velocities); i >= 0) throw NumericError(fmt::format("{}: non-finite velocity for atom {} at t={} ps", where, i + 1, time));
  if (const long i = bad(forces); i >= 0) throw NumericError(fmt::format("{}: non-finite force for atom {} at t={} ps", where, i + 1, time));
  if (!box.vectors().allFinite()) throw NumericError(fmt::format("{}: non-finite box at t={} ps", where, time));
}

double kinetic_energy(const std::vector<Vec3>& velocities, const std::vector<double>& masses) {
  double k = 0.0;
  for (std::size_t i = 0; i < velocities.size(); ++i) k += masses[i] * velocities[i].squaredNorm();
  return 0.5 * k;
}

Vec3 total_momentum(const std::vector<Vec3>& velocities, const std::vector<double>& masses) {
  Vec3 p = Vec3::Zero();
  for (std::size_t i = 0; i < velocities.size(); ++i) p += masses[i] * velocities[i];
  return p;
}

void remove_com_motion(std::vector<Vec3>& velocities, const std::vector<double>& masses) {
  double mtot = 0.0;
  for (std::size_t i = 0; i < velocities.size(); ++i) mtot += masses[i];
  if (!(mtot > 0.0)) return;
  const Vec3 vcom = total_momentum(velocities, masses) / mtot;
  for (auto& v : velocities) v -= vcom;
}

void generate_velocities(SimState& state, const std::vector<double>& masses, double temperature) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double s = std::sqrt(units::boltzmann * temperature / masses[i]);
    for (int k = 0; k < 3; ++k) state.velocities[i][k] = s * gauss(state.rng);
  }
  remove_com_motion(state.velocities, masses);
}

double pressure_bar(double kinetic, double virial, double volume) {
  return units::pressure_to_bar * (2.0 * kinetic + virial) / (3.0 * volume);
}

double temperature_kelvin(double kinetic, double dof) { return dof > 0.0 ? 2.0 * kinetic / (dof * units::boltzmann) : 0.0; }

} // namespace conformetrics::sim
