#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "cavscat/nonadiabatic.hpp"
#include "cavscat/numerov.hpp"

namespace cavscat {

// bound-continuum coupling Lambda = integral u_b W12 u_E dR, in sqrt(MHz)
// when u_E is energy normalized; 2 pi Lambda^2 is then an energy
double coupling_strength(const BoundStateResult& bound, const ContinuumState& continuum,
                         const WMatrixResult& w);

double resonance_width(double lambda);

// A_E = Lambda / (E - W_b + i Gamma/2); no principal-value shift of W_b
std::complex<double> dressed_amplitude(double e_rel, double w_b, double lambda);

struct TMatrixResult {
  std::complex<double> t;     // full element
  std::complex<double> t_bg;  // e^{i eta_bg} sin eta_bg
  std::complex<double> t_r;   // resonant part, t = t_bg + e^{2 i eta_bg} t_r
  double eta_bg = 0.0;
  double eta_r = 0.0;  // in (0, pi), sweeps through pi/2 at resonance
  double f_re = 0.0, f_im = 0.0;  // F = A_E Lambda
};

TMatrixResult t_matrix(double eta_bg, std::complex<double> a_e, double lambda);

// sigma_el = 4 pi / k^2 |T|^2 in a0^2
double cross_section(const std::complex<double>& t, double k);

// partial-wave selection: a bound level and a continuum couple only within
// equal total-channel labels and conserved projection
inline bool channels_coupled(int t_bound, int m_bound, int t_cont, int m_cont) {
  return t_bound == t_cont && m_bound == m_cont;
}

struct ResonanceRow {
  double e_MHz = 0.0;
  double eta_bg = 0.0;
  double eta_r = 0.0;
  double f_re = 0.0, f_im = 0.0;
  double sigma_a0sq = 0.0;
  double lambda = 0.0;
};

struct ResonanceReport {
  bool found = false;
  double e_res = 0.0;      // MHz above the scattering threshold, eta_r = pi/2
  double gamma = 0.0;      // MHz, width at the resonance energy
  double e_min = 0.0;      // MHz, cross-section minimum
  double w_b = 0.0;        // MHz, embedded bound level
  double pv_shift = 0.0;   // MHz, magnitude of the omitted principal-value shift
  double max_unitarity_violation = 0.0;
  bool unitarity_warning = false;
  std::vector<ResonanceRow> profile;
};

struct ScanInputs {
  const RadialProblem* lower = nullptr;      // continuum channel
  const BoundStateResult* bound = nullptr;   // level embedded from the upper channel
  const WMatrixResult* w = nullptr;
  double w_b = 0.0;             // bound energy relative to the lower threshold
  double coupling_scale = 1.0;  // channel-label weight; 0 decouples the pair
};

ResonanceReport resonance_scan(const ScanInputs& in, double e_lo, double e_hi,
                               std::size_t points, int threads = 1);

// survival probability |c_b(t)|^2 from the energy integral of |A_E|^2 with a
// x4 densified mesh within +-5 Gamma of the resonance
struct EvolutionResult {
  std::vector<double> t_us;
  std::vector<double> survival;
  double norm0 = 0.0;  // integral of |A_E|^2 over the window
  double gamma = 0.0;
};

EvolutionResult time_evolution(const std::function<double(double)>& lambda_of_e,
                               double w_b, double e_lo, double e_hi,
                               const std::vector<double>& times_us);

}  // namespace cavscat
