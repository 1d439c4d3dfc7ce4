#pragma once

#include <cstddef>
#include <vector>

#include "cavscat/dressed.hpp"

namespace cavscat {

// Full first-derivative coupling matrix over one sector's tracked eigenvectors,
// stored exactly antisymmetric with a zero diagonal.
struct TauField {
  RadialGrid grid;
  int channels = 0;
  std::vector<double> values;  // points * channels^2, 1/a0

  double at(std::size_t ip, int mu, int nu) const {
    const auto n = static_cast<std::size_t>(channels);
    return values[(ip * n + static_cast<std::size_t>(mu)) * n + static_cast<std::size_t>(nu)];
  }
};

TauField tau_matrix(const AdiabaticSpectrum& spectrum, bool richardson = false);

// Two-channel restriction used by the transformation chain, plus a diagnostic
// estimate of the dropped second-derivative coupling.
struct PairTau {
  RadialGrid grid;
  int lower = 0, upper = 1;
  std::vector<double> tau12;          // 1/a0
  std::vector<double> tau2_estimate;  // |<lower| d^2/dR^2 |upper>|, 1/a0^2
};

PairTau pair_tau(const AdiabaticSpectrum& spectrum, int lower, int upper,
                 bool richardson = false);

// Planar rotation angle gamma(R) accumulated from the outermost grid point,
// where the eigenvectors take their asymptotic form; A(R_max) = identity.
struct ADTResult {
  RadialGrid grid;
  std::vector<double> gamma;  // rad

  // A = exp(-integral tau) for the antisymmetric pair generator
  double a11(std::size_t ip) const;
  double a12(std::size_t ip) const;
  double a21(std::size_t ip) const;
  double a22(std::size_t ip) const;
};

ADTResult adt_matrix(const PairTau& tau);

// W tilde = A^T diag(E_lower, E_upper) A in MHz; the rescaled form
// (2 mu / hbar^2) W tilde divides each element by pref.
struct WMatrixResult {
  RadialGrid grid;
  std::vector<double> w11, w12, w22;  // MHz
  double pref = 0.0;                  // hbar^2/(2 mu), MHz a0^2
};

WMatrixResult w_matrix(const AdiabaticSpectrum& spectrum, const ADTResult& adt,
                       int lower, int upper, double reduced_mass_amu);

}  // namespace cavscat
