#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "conformetrics/elements.hpp"
#include "conformetrics/topology.hpp"

namespace testutil {

using conformetrics::Atom;
using conformetrics::Vec3;

inline Atom atom(std::size_t index, const std::string& name, const std::string& element, int resid = 1,
                 const std::string& resname = "GLN", int chain = 0, double charge = 0.0) {
  Atom a;
  a.index = index;
  a.name = name;
  a.element = element;
  a.mass = conformetrics::element_data(element)->mass;
  a.charge = charge;
  a.residue_seq = resid;
  a.residue_name = resname;
  a.chain_id = chain;
  return a;
}

inline std::vector<Vec3> random_cloud(std::size_t n, double spread, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<Vec3> x(n);
  for (auto& p : x) p = Vec3(u(rng), u(rng), u(rng));
  return x;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond q(n01(rng), n01(rng), n01(rng), n01(rng));
  q.normalize();
  return q.toRotationMatrix();
}

} // namespace testutil
