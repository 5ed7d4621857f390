#include "conformetrics/sim/barostat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conformetrics::sim {

BerendsenScale berendsen_scale(double p_ref, double tau_p, double kappa, double dt, double pressure) {
  BerendsenScale out;
  const double arg = 1.0 - dt / tau_p * kappa * (p_ref - pressure);
  out.mu = arg > 0.0 ? std::cbrt(arg) : 0.0;
  if (out.mu < 0.98 || out.mu > 1.02) {
    out.mu = std::clamp(out.mu, 0.98, 1.02);
    out.clamped = true;
  }
  return out;
}

double parrinello_rahman_acceleration(double length, double p_ref, double tau_p, double kappa, double pressure) {
  return 4.0 * std::numbers::pi * std::numbers::pi * kappa * length * (pressure - p_ref) / (3.0 * tau_p * tau_p);
}

} // namespace conformetrics::sim
