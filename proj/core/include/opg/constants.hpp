#pragma once

#include <numbers>

namespace opg {

/// Fundamental constants in SI units.  h, c and k_B are the exact values
/// fixed by the 2019 SI redefinition; hbar is derived as h / 2pi.
struct PhysicalConstants {
  double h;     ///< Planck constant [J s]
  double hbar;  ///< reduced Planck constant [J s]
  double c;     ///< speed of light in vacuum [m s^-1]
  double k_B;   ///< Boltzmann constant [J K^-1]
};

inline constexpr PhysicalConstants kSI{
    6.62607015e-34,
    6.62607015e-34 / (2.0 * std::numbers::pi),
    2.99792458e8,
    1.380649e-23,
};

/// h*c [J m]: photon energy at wavelength lambda is kPlanckTimesC / lambda.
inline constexpr double kPlanckTimesC = kSI.h * kSI.c;

}  // namespace opg
