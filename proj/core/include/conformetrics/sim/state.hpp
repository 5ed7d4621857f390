#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "conformetrics/box.hpp"
#include "conformetrics/topology.hpp"

namespace conformetrics::sim {

// Dynamic state. Positions are kept wrapped into the box; `images` counts the
// box lengths removed so that unwrapped() reproduces continuous trajectories.
// Velocities follow the leapfrog convention and live at t - dt/2.
struct SimState {
  std::vector<Vec3> positions;          // nm
  std::vector<Eigen::Vector3i> images;
  std::vector<Vec3> velocities;         // nm/ps
  std::vector<Vec3> forces;             // kJ mol^-1 nm^-1
  Box box;
  double time = 0.0;                    // ps
  double box_velocity = 0.0;            // dL/dt of the isotropic Parrinello-Rahman box, nm/ps
  std::mt19937_64 rng;

  static SimState from_frame(const Frame& frame, std::uint64_t seed);

  std::size_t size() const { return positions.size(); }
  std::vector<Vec3> unwrapped() const;
  Frame to_frame(bool unwrap = true) const;

  // Fold positions back into the box and update image counters.
  void wrap();
  // Isotropic rescale of positions and box by `mu`.
  void scale(double mu);

  // Throws NumericError if any position, velocity or force is not finite.
  void check_finite(const char* where) const;
};

double kinetic_energy(const std::vector<Vec3>& velocities, const std::vector<double>& masses);

// Subtract the mass-weighted mean velocity.
void remove_com_motion(std::vector<Vec3>& velocities, const std::vector<double>& masses);
Vec3 total_momentum(const std::vector<Vec3>& velocities, const std::vector<double>& masses);

// Maxwell-Boltzmann velocities at temperature T (K), COM motion removed.
void generate_velocities(SimState& state, const std::vector<double>& masses, double temperature);

// Instantaneous pressure in bar from kinetic energy (kJ/mol), the pair virial
// sum W = sum r_ij . F_ij (kJ/mol) and volume (nm^3).
double pressure_bar(double kinetic, double virial, double volume);

double temperature_kelvin(double kinetic, double degrees_of_freedom);

} // namespace conformetrics::sim
