#pragma once

#include <string>

// Internal unit system: energy in MHz (E/h), length in Bohr radii a0,
// mass in unified atomic mass units. Everything else converts at the boundary.
namespace cavscat::units {

// CODATA 2018. h, kB are exact by SI definition.
inline constexpr double planck_Js = 6.62607015e-34;
inline constexpr double hbar_Js = 1.054571817e-34;
inline constexpr double boltzmann_JK = 1.380649e-23;
inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double hartree_J = 4.3597447222071e-18;

inline constexpr double hartree_MHz = hartree_J / planck_Js / 1e6;
inline constexpr double MHz_per_mK = boltzmann_JK / planck_Js / 1e9;

enum class EnergyUnit { MHz, mK, Hartree };

double convert_energy(double value, EnergyUnit from, EnergyUnit to);
EnergyUnit parse_energy_unit(const std::string& tag);

// hbar^2/(2 mu) in MHz*a0^2 for a reduced mass in amu
double kinetic_prefactor(double reduced_mass_amu);

// reduced wavelength lambda/(2 pi) in a0
double lambda_bar_a0(double wavelength_nm);

inline constexpr double yb171_mass_amu = 170.936;

}  // namespace cavscat::units
