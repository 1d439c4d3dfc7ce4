#include "cavscat/nonadiabatic.hpp"

#include <cmath>
#include <stdexcept>

namespace cavscat {

namespace {

void require_tracked(const AdiabaticSpectrum& s) {
  // a tracked spectrum has sign-continuous eigenvectors; a negative adjacent
  // overlap means the input skipped the tracking pass
  const std::size_t npts = s.points();
  const int n = s.channels;
  for (std::size_t ip = 1; ip < npts; ++ip)
    for (int ch = 0; ch < n; ++ch) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += s.vector(ip - 1, i, ch) * s.vector(ip, i, ch);
      if (dot <= 0.0)
        throw std::invalid_argument("tau_matrix: spectrum eigenvectors are not continuity-tracked");
    }
}

// <mu(ip)| d/dR |nu(ip)> by central differences, one-sided at the ends
double derivative_overlap(const AdiabaticSpectrum& s, std::size_t ip, int mu, int nu,
                          bool richardson) {
  const std::size_t npts = s.points();
  const int n = s.channels;
  const double h = s.grid.step;
  auto diff = [&](std::size_t hi, std::size_t lo, double denom) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += s.vector(ip, i, mu) * (s.vector(hi, i, nu) - s.vector(lo, i, nu));
    return acc / denom;
  };
  if (ip == 0) return diff(1, 0, h);
  if (ip + 1 == npts) return diff(npts - 1, npts - 2, h);
  if (richardson && ip >= 2 && ip + 2 < npts) {
    const double d1 = diff(ip + 1, ip - 1, 2.0 * h);
    const double d2 = diff(ip + 2, ip - 2, 4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
  }
  return diff(ip + 1, ip - 1, 2.0 * h);
}

}  // namespace

TauField tau_matrix(const AdiabaticSpectrum& s, bool richardson) {
  require_tracked(s);
  const std::size_t npts = s.points();
  const int n = s.channels;
  const auto nn = static_cast<std::size_t>(n);
  TauField tau;
  tau.grid = s.grid;
  tau.channels = n;
  tau.values.assign(npts * nn * nn, 0.0);
  for (std::size_t ip = 0; ip < npts; ++ip)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        const double t = derivative_overlap(s, ip, mu, nu, richardson);
        tau.values[(ip * nn + static_cast<std::size_t>(mu)) * nn + static_cast<std::size_t>(nu)] = t;
        tau.values[(ip * nn + static_cast<std::size_t>(nu)) * nn + static_cast<std::size_t>(mu)] = -t;
      }
  return tau;
}

PairTau pair_tau(const AdiabaticSpectrum& s, int lower, int upper, bool richardson) {
  if (lower < 0 || upper >= s.channels || lower >= upper)
    throw std::invalid_argument("pair_tau: bad channel pair");
  require_tracked(s);
  const std::size_t npts = s.points();
  const int n = s.channels;
  const double h = s.grid.step;

  PairTau p;
  p.grid = s.grid;
  p.lower = lower;
  p.upper = upper;
  p.tau12.resize(npts);
  p.tau2_estimate.resize(npts);
  for (std::size_t ip = 0; ip < npts; ++ip) {
    p.tau12[ip] = derivative_overlap(s, ip, lower, upper, richardson);
    if (ip > 0 && ip + 1 < npts) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += s.vector(ip, i, lower) *
               (s.vector(ip + 1, i, upper) - 2.0 * s.vector(ip, i, upper) +
                s.vector(ip - 1, i, upper));
      p.tau2_estimate[ip] = std::abs(acc / (h * h));
    }
  }
  if (npts >= 2) {
    p.tau2_estimate[0] = p.tau2_estimate[1];
    p.tau2_estimate[npts - 1] = p.tau2_estimate[npts - 2];
  }
  return p;
}

double ADTResult::a11(std::size_t ip) const { return std::cos(gamma[ip]); }
double ADTResult::a12(std::size_t ip) const { return -std::sin(gamma[ip]); }
double ADTResult::a21(std::size_t ip) const { return std::sin(gamma[ip]); }
double ADTResult::a22(std::size_t ip) const { return std::cos(gamma[ip]); }

ADTResult adt_matrix(const PairTau& tau) {
  const std::size_t npts = tau.tau12.size();
  if (npts < 2) throw std::invalid_argument("adt_matrix: need at least two grid points");
  ADTResult adt;
  adt.grid = tau.grid;
  adt.gamma.assign(npts, 0.0);
  const double h = tau.grid.step;
  for (std::size_t i = npts - 1; i > 0; --i)
    adt.gamma[i - 1] = adt.gamma[i] - 0.5 * h * (tau.tau12[i] + tau.tau12[i - 1]);
  return adt;
}

WMatrixResult w_matrix(const AdiabaticSpectrum& s, const ADTResult& adt, int lower,
                       int upper, double reduced_mass_amu) {
  const std::size_t npts = s.points();
  if (adt.gamma.size() != npts || adt.grid.r_min != s.grid.r_min ||
      adt.grid.step != s.grid.step)
    throw std::invalid_argument("w_matrix: spectrum and ADT grids differ");
  if (lower < 0 || upper >= s.channels || lower >= upper)
    throw std::invalid_argument("w_matrix: bad channel pair");

  WMatrixResult w;
  w.grid = s.grid;
  w.pref = units::kinetic_prefactor(reduced_mass_amu);
  w.w11.resize(npts);
  w.w12.resize(npts);
  w.w22.resize(npts);
  for (std::size_t ip = 0; ip < npts; ++ip) {
    const double e1 = s.energy(ip, lower);
    const double e2 = s.energy(ip, upper);
    const double c = std::cos(adt.gamma[ip]);
    const double sn = std::sin(adt.gamma[ip]);
    w.w11[ip] = c * c * e1 + sn * sn * e2;
    w.w22[ip] = sn * sn * e1 + c * c * e2;
    w.w12[ip] = c * sn * (e2 - e1);
  }
  return w;
}

}  // namespace cavscat
