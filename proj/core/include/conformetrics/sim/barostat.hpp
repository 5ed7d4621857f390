#pragma once

namespace conformetrics::sim {

struct BerendsenScale {
  double mu = 1.0;
  bool clamped = false;
};

// Isotropic Berendsen scale factor mu = (1 - (dt/tau_p) kappa (P0 - P))^(1/3),
// clamped to [0.98, 1.02]. Pressures in bar, kappa in 1/bar.
BerendsenScale berendsen_scale(double p_ref, double tau_p, double kappa, double dt, double pressure);

// Isotropic Parrinello-Rahman box variable. The box edge L obeys
//   d2L/dt2 = 4 pi^2 kappa L (P - P0) / (3 tau_p^2),
// i.e. an inverse box mass 4 pi^2 kappa / (3 tau_p^2 L) acting on the force V (P - P0) / L,
// so that small volume oscillations have period tau_p when kappa is the true compressibility.
double parrinello_rahman_acceleration(double length, double p_ref, double tau_p, double kappa, double pressure);

} // namespace conformetrics::sim
