#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavscat/potentials.hpp"
#include "cavscat/smallmat.hpp"
#include "cavscat/units.hpp"

namespace cavscat {

struct CavityParams {
  double g_A = 18.0;     // MHz
  double g_B = 14.4;     // MHz
  double delta1 = -1.0;  // MHz, mode 1 detuning
  double delta2 = 1.0;   // MHz, mode 2 detuning
};

enum class Sector { one_photon, two_photon };

struct DressedBasisState {
  char label = '?';  // a..g as published; the state written g is reported as-is
  Sector sector = Sector::one_photon;
  int n1 = 0, n2 = 0;  // photon occupations relative to the reference (N1, N2)
  std::vector<double> f_excited;  // total f of each excited atom
  double asymptote_MHz = 0.0;
};

// default RDDI magnitude: the C3 scale set by the excited-state linewidth,
// (3/4) gamma lambdabar^3 in MHz a0^3
double rddi_linewidth_scale(double gamma_MHz, double lambda_nm);

struct ModelSpec {
  CavityParams cavity;
  HyperfineSpec hf{3957.0, 0.5, 1.0};
  DispersionSpec disp_gg{1932.0, AsymptoteKind::gg};
  DispersionSpec disp_eg{2810.0, AsymptoteKind::eg};
  DispersionSpec disp_ee{3886.0, AsymptoteKind::ee};
  RDDISpec rddi;        // MHz a0^3, absolute
  QuadrupoleSpec quad;
  double qc_au = 0.0;   // V_QQ coefficient on the one-photon doubly-excited state
  double qd_au = 0.0;   // same for the two-photon sector, both in a.u.
  double wall_r_min = 50.0;  // a0
  double mass_amu = units::yb171_mass_amu;
  double reduced_mass_amu() const { return 0.5 * mass_amu; }
};

// the calibrated strong-coupling profile
ModelSpec default_model();

std::vector<DressedBasisState> build_bell_basis(const ModelSpec& model);

// 3x3 (one-photon, basis order b, c, g) or 4x4 (two-photon, basis a, d, e, f)
SmallMat assemble_sector_hamiltonian(const ModelSpec& model, double r_a0, Sector sector);

struct AdiabaticSpectrum {
  Sector sector = Sector::one_photon;
  RadialGrid grid;
  int channels = 0;
  std::vector<double> energies;  // points * channels, tracked, MHz
  std::vector<double> vectors;   // points * channels^2; component i of channel ch
  std::vector<std::string> names;       // alpha..gamma / delta, chi, eta, zeta
  std::vector<char> bare_labels;        // matching dressed-state letters
  std::vector<double> bare_asymptotes;  // MHz, uncoupled limits

  std::size_t points() const { return energies.size() / static_cast<std::size_t>(channels); }
  double energy(std::size_t ip, int ch) const {
    return energies[ip * static_cast<std::size_t>(channels) + static_cast<std::size_t>(ch)];
  }
  double vector(std::size_t ip, int i, int ch) const {
    const auto n = static_cast<std::size_t>(channels);
    return vectors[(ip * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(ch)];
  }
};

AdiabaticSpectrum diagonalize_spectrum(const ModelSpec& model, Sector sector,
                                       const RadialGrid& grid, int threads = 1);

PotentialCurve extract_curve(const AdiabaticSpectrum& spectrum, int channel);

struct CrossingInfo {
  bool found = false;
  double r_c = 0.0;  // a0
  double gap = 0.0;  // MHz, |separation| at closest approach; 0 if the curves cross
};

CrossingInfo find_pseudo_crossing(const AdiabaticSpectrum& spectrum, int lower, int upper);

double well_depth(const PotentialCurve& curve);

}  // namespace cavscat
