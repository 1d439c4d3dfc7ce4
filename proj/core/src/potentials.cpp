#include "cavscat/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "cavscat/angular.hpp"
#include "cavscat/units.hpp"

namespace cavscat {

std::size_t RadialGrid::points() const {
  if (!(step > 0.0) || !(r_max > r_min))
    throw std::invalid_argument("RadialGrid: need step > 0 and r_max > r_min");
  return static_cast<std::size_t>(std::llround((r_max - r_min) / step)) + 1;
}

double dispersion_potential(const DispersionSpec& spec, double r_a0) {
  if (!(r_a0 > 0.0)) throw std::domain_error("dispersion_potential: R must be positive");
  const double r3 = r_a0 * r_a0 * r_a0;
  return -spec.c6_hartree * units::hartree_MHz / (r3 * r3);
}

double rddi_potential(const RDDISpec& spec, RddiPair pair, double r_a0) {
  if (!(r_a0 > 0.0)) throw std::domain_error("rddi_potential: R must be positive");
  double c = 0.0;
  switch (pair) {
    case RddiPair::p11: c = spec.c11; break;
    case RddiPair::p12: c = spec.c12; break;
    case RddiPair::p22: c = spec.c22; break;
    default: throw std::invalid_argument("rddi_potential: undefined pair");
  }
  return c / (r_a0 * r_a0 * r_a0);
}

double hyperfine_shift(const HyperfineSpec& spec, double f) {
  const double lo = std::abs(spec.i - spec.j);
  const double hi = spec.i + spec.j;
  if (f < lo - 1e-9 || f > hi + 1e-9)
    throw std::invalid_argument("hyperfine_shift: f outside the triangle rule");
  return spec.a_hf_MHz *
         (f * (f + 1.0) - spec.i * (spec.i + 1.0) - spec.j * (spec.j + 1.0)) / 2.0;
}

double intercombination_moment(const QuadrupoleSpec& spec) {
  return std::sqrt(2.0 / 15.0) * spec.reduced_element_au;
}

double quadrupole_component(const QuadrupoleSpec& spec, int q, int mp, int m) {
  if (std::abs(mp) > 1 || std::abs(m) > 1)
    throw std::invalid_argument("quadrupole_component: |M| must not exceed J = 1");
  if (std::abs(q) > 2) throw std::invalid_argument("quadrupole_component: |q| > 2");
  const double moment = intercombination_moment(spec);
  const double tj = wigner3j(1.0, 2.0, 1.0, -mp, q, m);
  const double phase = ((1 - mp) % 2 == 0) ? 1.0 : -1.0;
  return phase * moment * std::sqrt(15.0 / 2.0) * tj;
}

double quadrupole_tensor_element(const QuadrupoleSpec& spec, int m, int mp) {
  return quadrupole_component(spec, 0, mp, m);
}

namespace {

constexpr double pair_weight(int q) {
  // 4!/((2-q)!(2+q)!)
  switch (q) {
    case 0: return 6.0;
    case 1:
    case -1: return 4.0;
    default: return 1.0;
  }
}

inline int pidx(int ma, int mb) { return (ma + 1) * 3 + (mb + 1); }

}  // namespace

SmallMat quad_pair_operator(const QuadrupoleSpec& spec) {
  SmallMat q9(9);
  for (int map = -1; map <= 1; ++map)
    for (int mbp = -1; mbp <= 1; ++mbp)
      for (int ma = -1; ma <= 1; ++ma)
        for (int mb = -1; mb <= 1; ++mb) {
          double el = 0.0;
          for (int q = -2; q <= 2; ++q)
            el += pair_weight(q) * quadrupole_component(spec, q, map, ma) *
                  quadrupole_component(spec, -q, mbp, mb);
          q9(pidx(map, mbp), pidx(ma, mb)) = el;
        }
  return q9;
}

std::vector<double> quad_pair_spectrum(const QuadrupoleSpec& spec) {
  const EigenResult r = jacobi_eigensolve(quad_pair_operator(spec));
  return std::vector<double>(r.values.begin(), r.values.begin() + r.n);
}

double quad_pair_expectation(const QuadrupoleSpec& spec, int ma, int mb,
                             int exchange_sign) {
  if (exchange_sign != 1 && exchange_sign != -1)
    throw std::invalid_argument("quad_pair_expectation: exchange sign must be +-1");
  if (ma == mb && exchange_sign == -1)
    throw std::invalid_argument("quad_pair_expectation: antisymmetric combination vanishes");
  const SmallMat q9 = quad_pair_operator(spec);
  const int ab = pidx(ma, mb), ba = pidx(mb, ma);
  if (ma == mb) return q9(ab, ab);
  return 0.5 * (q9(ab, ab) + q9(ba, ba) +
                2.0 * exchange_sign * q9(ab, ba));
}

double vqq_potential(double coeff_au, double r_a0) {
  if (!(r_a0 > 0.0)) throw std::domain_error("vqq_potential: R must be positive");
  const double r5 = r_a0 * r_a0 * r_a0 * r_a0 * r_a0;
  return coeff_au * units::hartree_MHz / r5;
}

double inner_wall(double r_a0, double wall_r_min_a0) {
  return r_a0 < wall_r_min_a0 ? wall_height_MHz : 0.0;
}

}  // namespace cavscat
