#include "cavscat/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavscat::units {

namespace {

// conversion factor "MHz per one of this unit"
double to_mhz_factor(EnergyUnit u) {
  switch (u) {
    case EnergyUnit::MHz:
      return 1.0;
    case EnergyUnit::mK:
      return MHz_per_mK;
    case EnergyUnit::Hartree:
      return hartree_MHz;
  }
  throw std::invalid_argument("unknown energy unit tag");
}

}  // namespace

double convert_energy(double value, EnergyUnit from, EnergyUnit to) {
  return value * (to_mhz_factor(from) / to_mhz_factor(to));
}

EnergyUnit parse_energy_unit(const std::string& tag) {
  if (tag == "MHz") return EnergyUnit::MHz;
  if (tag == "mK") return EnergyUnit::mK;
  if (tag == "hartree" || tag == "Hartree") return EnergyUnit::Hartree;
  throw std::invalid_argument("unknown energy unit tag: " + tag);
}

double kinetic_prefactor(double reduced_mass_amu) {
  if (!(reduced_mass_amu > 0.0))
    throw std::invalid_argument("kinetic_prefactor: reduced mass must be positive");
  const double denom = 2.0 * reduced_mass_amu * amu_kg * bohr_m * bohr_m;
  return hbar_Js * hbar_Js / denom / planck_Js / 1e6;
}

double lambda_bar_a0(double wavelength_nm) {
  if (!(wavelength_nm > 0.0))
    throw std::invalid_argument("lambda_bar_a0: wavelength must be positive");
  return wavelength_nm * 1e-9 / (2.0 * std::numbers::pi) / bohr_m;
}

}  // namespace cavscat::units
