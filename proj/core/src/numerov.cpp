#include "cavscat/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cavscat/smallmat.hpp"
#include "cavscat/units.hpp"

namespace cavscat {

double RadialProblem::pref() const { return units::kinetic_prefactor(reduced_mass_amu); }

double RadialProblem::veff(std::size_t i) const {
  double v = potential.values[i];
  if (ell > 0) {
    const double r = potential.r(i);
    const double rr = r > 1e-12 ? r * r : 1e-24;
    v += pref() * static_cast<double>(ell) * static_cast<double>(ell + 1) / rr;
  }
  return v;
}

namespace {

constexpr double kRescaleLimit = 1e250;
constexpr double kSeed = 1e-6;

struct Shot {
  std::vector<double> u;
  int nodes = 0;
};

// u'' = f u with f = (veff - E)/pref; c_i = 1 - h^2 f_i / 12
Shot shoot(const RadialProblem& p, double e_abs, Direction dir, std::size_t stop_index) {
  const std::size_t n = p.size();
  if (n < 3) throw std::invalid_argument("numerov: grid too short");
  const double h = p.potential.step;
  const double hh12 = h * h / 12.0;
  const double pref = p.pref();

  Shot s;
  s.u.assign(n, 0.0);
  auto cof = [&](std::size_t i) { return 1.0 - hh12 * (p.veff(i) - e_abs) / pref; };

  if (dir == Direction::outward) {
    s.u[0] = 0.0;
    s.u[1] = kSeed;
    double prev_sign = kSeed;
    double cm = cof(0), c0 = cof(1);
    for (std::size_t i = 1; i + 1 <= stop_index; ++i) {
      const double cp = cof(i + 1);
      s.u[i + 1] = ((12.0 - 10.0 * c0) * s.u[i] - cm * s.u[i - 1]) / cp;
      cm = c0;
      c0 = cp;
      const double val = s.u[i + 1];
      if (val != 0.0) {
        if (val * prev_sign < 0.0) ++s.nodes;
        prev_sign = val;
      }
      if (std::abs(val) > kRescaleLimit) {
        const double inv = 1.0 / kRescaleLimit;
        for (std::size_t j = 0; j <= i + 1; ++j) s.u[j] *= inv;
        prev_sign *= inv;
      }
    }
  } else {
    s.u[n - 1] = 0.0;
    s.u[n - 2] = kSeed;
    double cm = cof(n - 1), c0 = cof(n - 2);
    for (std::size_t i = n - 2; i - 1 >= stop_index && i >= 1; --i) {
      const double cp = cof(i - 1);
      s.u[i - 1] = ((12.0 - 10.0 * c0) * s.u[i] - cm * s.u[i + 1]) / cp;
      cm = c0;
      c0 = cp;
      if (std::abs(s.u[i - 1]) > kRescaleLimit) {
        const double inv = 1.0 / kRescaleLimit;
        for (std::size_t j = i - 1; j < n; ++j) s.u[j] *= inv;
      }
      if (i == 1) break;  // unsigned guard
    }
  }
  return s;
}

int count_nodes(const std::vector<double>& u) {
  int nodes = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    if (prev != 0.0 && u[i] * prev < 0.0) ++nodes;
    prev = u[i];
  }
  return nodes;
}

}  // namespace

std::vector<double> numerov_integrate(const RadialProblem& p, double e_rel, Direction dir) {
  if (!std::isfinite(e_rel)) throw std::invalid_argument("numerov_integrate: energy not finite");
  const double e_abs = p.potential.asymptote + e_rel;
  const std::size_t n = p.size();
  return shoot(p, e_abs, dir, dir == Direction::outward ? n - 1 : 0).u;
}

std::vector<BoundStateResult> solve_bound_states(const RadialProblem& p, double tol_MHz) {
  const std::size_t n = p.size();
  if (n < 8) throw std::invalid_argument("solve_bound_states: grid too short");
  const double thr = p.potential.asymptote;

  double vmin = p.veff(0);
  for (std::size_t i = 1; i < n; ++i) vmin = std::min(vmin, p.veff(i));
  const double e_floor = vmin - thr;
  if (e_floor >= 0.0) return {};

  const double e_top = -std::max(tol_MHz, 1e-6);
  auto nodes_at = [&](double e_rel) {
    return shoot(p, thr + e_rel, Direction::outward, n - 1).nodes;
  };
  const int n_levels = nodes_at(e_top);

  std::vector<BoundStateResult> out;
  double lo_start = e_floor * (1.0 - 1e-12);
  for (int v = 0; v < n_levels; ++v) {
    double lo = lo_start, hi = e_top;
    int iter = 0;
    while (hi - lo > 0.25 * tol_MHz) {
      if (++iter > 200) {
        std::ostringstream os;
        os << "bound-state bisection stalled in [" << lo << ", " << hi << "] MHz for "
           << (p.channel.empty() ? p.potential.label : p.channel);
        throw NumericalError("numerov", os.str());
      }
      const double mid = 0.5 * (lo + hi);
      if (nodes_at(mid) > v)
        hi = mid;
      else
        lo = mid;
    }
    const double e_v = 0.5 * (lo + hi);
    lo_start = e_v;  // next level sits above this one

    // assemble the wavefunction: outward to the outermost turning point,
    // inward from the far boundary, stitched and normalized
    const double e_abs = thr + e_v;
    std::size_t im = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (p.veff(i) < e_abs) im = i;
    im = std::clamp<std::size_t>(im, 2, n - 3);

    Shot fwd = shoot(p, e_abs, Direction::outward, im + 1);
    Shot bwd = shoot(p, e_abs, Direction::inward, im);
    if (bwd.u[im] == 0.0) ++im;
    const double scale = fwd.u[im] / bwd.u[im];

    BoundStateResult b;
    b.energy = e_v;
    b.u.assign(n, 0.0);
    for (std::size_t i = 0; i <= im; ++i) b.u[i] = fwd.u[i];
    for (std::size_t i = im + 1; i < n; ++i) b.u[i] = scale * bwd.u[i];

    const double h = p.potential.step;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      ss += w * b.u[i] * b.u[i];
    }
    double norm = 1.0 / std::sqrt(ss * h);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(b.u[i]) > std::abs(b.u[imax])) imax = i;
    if (b.u[imax] < 0.0) norm = -norm;
    for (auto& x : b.u) x *= norm;

    b.v = count_nodes(b.u);
    out.push_back(std::move(b));
  }
  return out;
}

double riccati_j(int ell, double x) {
  const double j0 = std::sin(x);
  if (ell == 0) return j0;
  const double j1 = std::sin(x) / x - std::cos(x);
  if (ell == 1) return j1;
  double jm = j0, j = j1;
  for (int l = 1; l < ell; ++l) {
    const double jp = (2.0 * l + 1.0) / x * j - jm;
    jm = j;
    j = jp;
  }
  return j;
}

double riccati_n(int ell, double x) {
  const double n0 = std::cos(x);
  if (ell == 0) return n0;
  const double n1 = std::cos(x) / x + std::sin(x);
  if (ell == 1) return n1;
  double nm = n0, nv = n1;
  for (int l = 1; l < ell; ++l) {
    const double np = (2.0 * l + 1.0) / x * nv - nm;
    nm = nv;
    nv = np;
  }
  return nv;
}

ContinuumState solve_scattering(const RadialProblem& p, double e_rel) {
  if (!(e_rel > 0.0)) throw std::domain_error("solve_scattering: energy must be positive");
  const std::size_t n = p.size();
  if (n < 16) throw std::invalid_argument("solve_scattering: grid too short");
  const double thr = p.potential.asymptote;
  const double pref = p.pref();
  const double k = std::sqrt(e_rel / pref);
  const double h = p.potential.step;

  ContinuumState cs;
  cs.energy = e_rel;
  cs.k = k;
  cs.u = shoot(p, thr + e_rel, Direction::outward, n - 1).u;

  const std::size_t i2 = n - 2;
  const auto quarter = static_cast<std::size_t>(
      std::max(3.0, std::round(0.5 * std::numbers::pi / (k * h))));
  std::size_t i1 = quarter < i2 ? i2 - quarter : 3;
  if (i1 < n / 2) i1 = std::max<std::size_t>(3, i2 - 10);

  double det = 0.0, ca = 0.0, cc = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double x1 = k * p.potential.r(i1);
    const double x2 = k * p.potential.r(i2);
    const double j1v = riccati_j(p.ell, x1), j2v = riccati_j(p.ell, x2);
    const double n1v = riccati_n(p.ell, x1), n2v = riccati_n(p.ell, x2);
    det = j1v * n2v - n1v * j2v;
    if (std::abs(det) > 1e-3) {
      ca = (cs.u[i1] * n2v - cs.u[i2] * n1v) / det;
      cc = (cs.u[i2] * j1v - cs.u[i1] * j2v) / det;
      break;
    }
    --i1;  // nearly collinear pair, widen the separation
  }
  if (std::abs(det) <= 1e-3)
    throw NumericalError("numerov", "scattering match points are degenerate");

  double eta = std::atan2(cc, ca);
  double sign = 1.0;
  if (eta < 0.0) {
    eta += std::numbers::pi;
    sign = -1.0;  // sin picks up a sign under the pi fold
  }
  const double amplitude = std::hypot(ca, cc);
  const double target = std::sqrt(1.0 / (std::numbers::pi * pref * k));
  const double factor = sign * target / amplitude;
  for (auto& x : cs.u) x *= factor;

  cs.eta = eta;
  cs.matching_warning =
      std::abs(p.potential.values[i1] - thr) > 1e-3 * e_rel;
  return cs;
}

}  // namespace cavscat
