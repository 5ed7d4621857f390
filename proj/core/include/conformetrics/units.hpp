#pragma once

// Internal units: nm, ps, kJ/mol, amu, elementary charge, K, bar.
// Reports convert lengths to angstrom and areas to square angstrom exactly once, at emission.
namespace conformetrics::units {

inline constexpr double boltzmann = 0.0083144626181532;       // kJ mol^-1 K^-1
inline constexpr double coulomb_constant = 138.935458;        // kJ mol^-1 nm e^-2
inline constexpr double pressure_to_bar = 16.6054;            // kJ mol^-1 nm^-3 -> bar
inline constexpr double nm_to_angstrom = 10.0;
inline constexpr double nm2_to_angstrom2 = 100.0;

} // namespace conformetrics::units
