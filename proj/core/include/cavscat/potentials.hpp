#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavscat/smallmat.hpp"

namespace cavscat {

struct RadialGrid {
  double r_min = 50.0;   // a0
  double r_max = 4000.0; // a0
  double step = 0.02;    // a0

  std::size_t points() const;
  double r(std::size_t i) const { return r_min + step * static_cast<double>(i); }
};

struct PotentialCurve {
  double r_min = 0.0;
  double step = 0.0;
  std::vector<double> values;  // MHz
  std::string label;
  double asymptote = 0.0;  // MHz, energy at infinite separation

  std::size_t size() const { return values.size(); }
  double r(std::size_t i) const { return r_min + step * static_cast<double>(i); }
};

enum class AsymptoteKind { gg, eg, ee };

struct DispersionSpec {
  double c6_hartree = 0.0;  // hartree a0^6, positive for an attractive tail
  AsymptoteKind kind = AsymptoteKind::gg;
};

// -C6/R^6 in MHz
double dispersion_potential(const DispersionSpec& spec, double r_a0);

enum class RddiPair { p11, p12, p22 };

struct RDDISpec {
  // MHz a0^3, indexed by the excited-sublevel pair of the exchange term
  double c11 = 0.0;
  double c12 = 0.0;
  double c22 = 0.0;
};

// C_{j'j''}/R^3 in MHz
double rddi_potential(const RDDISpec& spec, RddiPair pair, double r_a0);

struct HyperfineSpec {
  double a_hf_MHz = 0.0;
  double i = 0.5;  // nuclear spin
  double j = 1.0;  // electronic angular momentum of the excited level
};

// a_hf [f(f+1) - i(i+1) - j(j+1)]/2 in MHz; f must satisfy the triangle rule
double hyperfine_shift(const HyperfineSpec& spec, double f);

struct QuadrupoleSpec {
  double reduced_element_au = -19.7;  // <3P1||F||3P1>
  // admixture amplitudes of the intercombination mixing
  double alpha = 0.99159;
  double beta = 0.12939;
};

// scalar moment: sqrt(2/15) times the reduced element, in a.u.
double intercombination_moment(const QuadrupoleSpec& spec);

// <J=1 M'|F_q|J=1 M> in a.u. via the 3j expansion
double quadrupole_component(const QuadrupoleSpec& spec, int q, int mp, int m);

// <J=1 M'|F^2_0|J=1 M>, the q = 0 tensor element used in the pair operator
double quadrupole_tensor_element(const QuadrupoleSpec& spec, int m, int mp);

// two-atom operator sum_q w_q (F_q)_A (F_-q)_B on the 9-dim |M_A, M_B> product
// basis (M = -1, 0, 1 fastest on atom B), in a.u.; w_q = 4!/((2-q)!(2+q)!)
SmallMat quad_pair_operator(const QuadrupoleSpec& spec);

// eigenvalues of the pair operator, ascending, in a.u.
std::vector<double> quad_pair_spectrum(const QuadrupoleSpec& spec);

// diagonal expectation of the pair operator on the normalized combination
// (|ma, mb> + exchange_sign |mb, ma>)/norm, in a.u.
double quad_pair_expectation(const QuadrupoleSpec& spec, int ma, int mb, int exchange_sign);

// coeff_au/R^5 converted to MHz; both atoms must be excited for this term to
// exist, which callers assert by construction of the sector Hamiltonian
double vqq_potential(double coeff_au, double r_a0);

// artificial short-range closure of every channel
inline constexpr double wall_height_MHz = 1e6;
double inner_wall(double r_a0, double wall_r_min_a0);

}  // namespace cavscat
