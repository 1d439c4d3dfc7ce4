#include "cavscat/fano.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavscat/parallel.hpp"
#include "cavscat/smallmat.hpp"

namespace cavscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double coupling_strength(const BoundStateResult& bound, const ContinuumState& continuum,
                         const WMatrixResult& w) {
  const std::size_t n = w.grid.points();
  if (bound.u.size() != n || continuum.u.size() != n || w.w12.size() != n) {
    throw std::invalid_argument(
        "coupling_strength: bound, continuum and coupling grids disagree");
  }
  const double h = w.grid.step;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double f0 = bound.u[i] * w.w12[i] * continuum.u[i];
    const double f1 = bound.u[i + 1] * w.w12[i + 1] * continuum.u[i + 1];
    acc += 0.5 * h * (f0 + f1);
  }
  return acc;
}

double resonance_width(double lambda) { return 2.0 * kPi * lambda * lambda; }

std::complex<double> dressed_amplitude(double e_rel, double w_b, double lambda) {
  const double half_width = 0.5 * resonance_width(lambda);
  return lambda / std::complex<double>(e_rel - w_b, half_width);
}

TMatrixResult t_matrix(double eta_bg, std::complex<double> a_e, double lambda) {
  TMatrixResult out;
  out.eta_bg = eta_bg;

  const std::complex<double> f = a_e * lambda;
  out.f_re = f.real();
  out.f_im = f.imag();

  // F = (Gamma/2) / (E - W_b + i Gamma/2) has argument in (-pi, 0]; shifting
  // by pi lands the resonant phase in (0, pi), rising through pi/2 at E = W_b.
  out.eta_r = std::atan2(out.f_im, out.f_re) + kPi;
  out.t_r = -kPi * f;

  const std::complex<double> ibg(0.0, eta_bg);
  out.t_bg = std::exp(ibg) * std::sin(eta_bg);
  out.t = out.t_bg + std::exp(2.0 * ibg) * out.t_r;
  return out;
}

double cross_section(const std::complex<double>& t, double k) {
  if (k <= 0.0) throw std::domain_error("cross_section: wavenumber must be positive");
  return 4.0 * kPi / (k * k) * std::norm(t);
}

namespace {

ResonanceRow evaluate_row(const ScanInputs& in, double e_rel, double* t_abs) {
  const ContinuumState cs = solve_scattering(*in.lower, e_rel);
  const double lam =
      in.coupling_scale * coupling_strength(*in.bound, cs, *in.w);
  const auto a = dressed_amplitude(e_rel, in.w_b, lam);
  const TMatrixResult tm = t_matrix(cs.eta, a, lam);

  ResonanceRow row;
  row.e_MHz = e_rel;
  row.eta_bg = tm.eta_bg;
  row.eta_r = tm.eta_r;
  row.f_re = tm.f_re;
  row.f_im = tm.f_im;
  row.sigma_a0sq = cross_section(tm.t, cs.k);
  row.lambda = lam;
  if (t_abs) *t_abs = std::abs(tm.t);
  return row;
}

}  // namespace

ResonanceReport resonance_scan(const ScanInputs& in, double e_lo, double e_hi,
                               std::size_t points, int threads) {
  if (!in.lower || !in.bound || !in.w) {
    throw std::invalid_argument("resonance_scan: incomplete inputs");
  }
  if (points < 2) throw std::invalid_argument("resonance_scan: need at least two points");
  if (e_lo <= 0.0 || e_hi <= e_lo) {
    throw std::invalid_argument("resonance_scan: window must satisfy 0 < e_lo < e_hi");
  }

  ResonanceReport rep;
  rep.w_b = in.w_b;
  rep.profile.resize(points);
  std::vector<double> t_abs(points, 0.0);

  const double de = (e_hi - e_lo) / static_cast<double>(points - 1);
  parallel_for(points, threads, [&](std::size_t i) {
    const double e = e_lo + de * static_cast<double>(i);
    rep.profile[i] = evaluate_row(in, e, &t_abs[i]);
  });

  for (std::size_t i = 0; i < points; ++i) {
    rep.max_unitarity_violation =
        std::max(rep.max_unitarity_violation, t_abs[i] - 1.0);
  }
  rep.max_unitarity_violation = std::max(rep.max_unitarity_violation, 0.0);
  rep.unitarity_warning = rep.max_unitarity_violation > 1e-6;

  // resonance position: eta_r rises through pi/2
  const double half_pi = 0.5 * kPi;
  std::size_t cross = points;
  for (std::size_t i = 0; i + 1 < points; ++i) {
    const double a = rep.profile[i].eta_r - half_pi;
    const double b = rep.profile[i + 1].eta_r - half_pi;
    if (a == 0.0 || (a < 0.0 && b > 0.0)) {
      cross = i;
      break;
    }
  }
  if (cross < points) {
    double lo = rep.profile[cross].e_MHz;
    double hi = rep.profile[cross + 1].e_MHz;
    double lam_mid = rep.profile[cross].lambda;
    for (int it = 0; it < 80 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const ResonanceRow row = evaluate_row(in, mid, nullptr);
      lam_mid = row.lambda;
      if (row.eta_r < half_pi) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    rep.found = true;
    rep.e_res = 0.5 * (lo + hi);
    rep.gamma = resonance_width(lam_mid);
  }

  // cross-section minimum, refined by a parabola through the bracketing points
  std::size_t imin = 0;
  for (std::size_t i = 1; i < points; ++i) {
    if (rep.profile[i].sigma_a0sq < rep.profile[imin].sigma_a0sq) imin = i;
  }
  rep.e_min = rep.profile[imin].e_MHz;
  if (imin > 0 && imin + 1 < points) {
    const double y0 = rep.profile[imin - 1].sigma_a0sq;
    const double y1 = rep.profile[imin].sigma_a0sq;
    const double y2 = rep.profile[imin + 1].sigma_a0sq;
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom > 0.0) {
      const double shift = 0.5 * (y0 - y2) / denom;
      if (std::abs(shift) <= 1.0) rep.e_min += shift * de;
    }
  }

  // magnitude of the principal-value level shift this model drops; the bins
  // touching the pole are excluded from the quadrature
  if (rep.found) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < points; ++i) {
      const double ea = rep.profile[i].e_MHz;
      const double eb = rep.profile[i + 1].e_MHz;
      if (rep.e_res >= ea - de && rep.e_res <= eb + de) continue;
      const double fa = rep.profile[i].lambda * rep.profile[i].lambda / (rep.e_res - ea);
      const double fb =
          rep.profile[i + 1].lambda * rep.profile[i + 1].lambda / (rep.e_res - eb);
      acc += 0.5 * (eb - ea) * (fa + fb);
    }
    rep.pv_shift = std::abs(acc);
  }

  return rep;
}

EvolutionResult time_evolution(const std::function<double(double)>& lambda_of_e,
                               double w_b, double e_lo, double e_hi,
                               const std::vector<double>& times_us) {
  if (e_hi <= e_lo) throw std::invalid_argument("time_evolution: empty energy window");

  const double lam0 = lambda_of_e(w_b);
  const double gamma = resonance_width(lam0);
  if (e_hi - e_lo < 10.0 * gamma) {
    throw std::invalid_argument(
        "time_evolution: energy window narrower than ten linewidths");
  }

  // uniform base mesh, four times denser within five linewidths of the level
  const std::size_t base_points = 2001;
  const double h0 = (e_hi - e_lo) / static_cast<double>(base_points - 1);
  std::vector<double> energy;
  energy.reserve(base_points * 2);
  double e = e_lo;
  while (e < e_hi) {
    energy.push_back(e);
    const double step = (std::abs(e - w_b) <= 5.0 * gamma) ? 0.25 * h0 : h0;
    e += step;
  }
  energy.push_back(e_hi);

  const std::size_t n = energy.size();
  std::vector<double> weight(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double left = (j == 0) ? energy[0] : energy[j - 1];
    const double right = (j + 1 == n) ? energy[n - 1] : energy[j + 1];
    weight[j] = 0.5 * (right - left);
  }

  std::vector<double> density(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double lam = lambda_of_e(energy[j]);
    density[j] = weight[j] * std::norm(dressed_amplitude(energy[j], w_b, lam));
  }

  EvolutionResult out;
  out.gamma = gamma;
  out.t_us = times_us;
  out.survival.resize(times_us.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) out.norm0 += density[j];

  // survival is conditioned on the window: |c(t)|^2 / |c(0)|^2
  const double c0 = out.norm0;
  for (std::size_t m = 0; m < times_us.size(); ++m) {
    std::complex<double> c(0.0, 0.0);
    const double phase_scale = 2.0 * kPi * times_us[m];
    for (std::size_t j = 0; j < n; ++j) {
      c += density[j] * std::exp(std::complex<double>(0.0, -phase_scale * energy[j]));
    }
    out.survival[m] = (c0 > 0.0) ? std::norm(c / c0) : 0.0;
  }
  return out;
}

}  // namespace cavscat
