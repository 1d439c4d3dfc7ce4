#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavscat/potentials.hpp"

namespace cavscat {

struct RadialProblem {
  PotentialCurve potential;  // absolute MHz; threshold is potential.asymptote
  double reduced_mass_amu = 1.0;
  int ell = 0;
  std::string channel;

  double pref() const;                // hbar^2/(2 mu), MHz a0^2
  std::size_t size() const { return potential.size(); }
  // potential plus centrifugal barrier, MHz
  double veff(std::size_t i) const;
};

enum class Direction { outward, inward };

// Single Numerov pass at energy e_rel (MHz, relative to the threshold).
// Overflow in classically forbidden stretches rescales the stored prefix.
std::vector<double> numerov_integrate(const RadialProblem& problem, double e_rel,
                                      Direction direction);

struct BoundStateResult {
  double energy = 0.0;    // MHz, negative, relative to the threshold
  int v = 0;              // node count
  std::vector<double> u;  // unit normalized
};

// all levels by node-count bracketing bisection, sorted by energy
std::vector<BoundStateResult> solve_bound_states(const RadialProblem& problem,
                                                 double tol_MHz = 1e-6);

struct ContinuumState {
  double energy = 0.0;  // MHz relative to the threshold
  double k = 0.0;       // 1/a0
  double eta = 0.0;     // rad, folded into [0, pi)
  std::vector<double> u;  // energy normalized: amplitude^2 = 2mu/(pi hbar^2 k)
  bool matching_warning = false;  // potential not yet negligible at the match radius
};

ContinuumState solve_scattering(const RadialProblem& problem, double e_rel);

// Riccati-Bessel pair with sin(x - l pi/2) / cos(x - l pi/2) asymptotes
double riccati_j(int ell, double x);
double riccati_n(int ell, double x);

}  // namespace cavscat
