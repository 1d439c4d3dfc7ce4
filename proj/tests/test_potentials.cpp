#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cavscat/potentials.hpp"
#include "cavscat/smallmat.hpp"

using namespace cavscat;

namespace {
constexpr double kHartreeMHz = 4.3597447222071e-18 / 6.62607015e-34 / 1e6;
}

TEST_CASE("radial grid bookkeeping") {
  RadialGrid g;
  CHECK(g.points() == 197501);
  CHECK(g.r(0) == doctest::Approx(50.0));
  CHECK(g.r(g.points() - 1) == doctest::Approx(4000.0).epsilon(1e-12));

  RadialGrid tiny{1.0, 2.0, 0.5};
  CHECK(tiny.points() == 3);
}

TEST_CASE("power-law building blocks against literal formulas") {
  const DispersionSpec d{1932.0, AsymptoteKind::gg};
  CHECK(dispersion_potential(d, 80.0) ==
        doctest::Approx(-1932.0 * kHartreeMHz / std::pow(80.0, 6)).epsilon(1e-12));
  CHECK_THROWS_AS(dispersion_potential(d, 0.0), std::domain_error);
  CHECK_THROWS_AS(dispersion_potential(d, -2.0), std::domain_error);

  RDDISpec r{100.0, -40.0, 7.0};
  CHECK(rddi_potential(r, RddiPair::p11, 10.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rddi_potential(r, RddiPair::p12, 10.0) == doctest::Approx(-0.04).epsilon(1e-12));
  CHECK(rddi_potential(r, RddiPair::p22, 10.0) == doctest::Approx(0.007).epsilon(1e-12));

  CHECK(vqq_potential(2.5, 10.0) ==
        doctest::Approx(2.5 * kHartreeMHz / 1e5).epsilon(1e-12));

  CHECK(inner_wall(49.99, 50.0) == wall_height_MHz);
  CHECK(inner_wall(50.0, 50.0) == 0.0);
  CHECK(inner_wall(500.0, 50.0) == 0.0);
}

TEST_CASE("hyperfine shifts equal a product-space diagonalization") {
  const HyperfineSpec hf{3957.0, 0.5, 1.0};

  // oracle: a_hf I.J on the 6-dim |m_i, m_j> basis, i = 1/2, j = 1
  const double i = 0.5, j = 1.0;
  const auto idx = [](int two_mi, int mj) { return (two_mi + 1) / 2 * 3 + (mj + 1); };
  SmallMat h(6);
  for (int two_mi = -1; two_mi <= 1; two_mi += 2) {
    for (int mj = -1; mj <= 1; ++mj) {
      const double mi = two_mi / 2.0;
      h(idx(two_mi, mj), idx(two_mi, mj)) += hf.a_hf_MHz * mi * mj;
      // (I+ J- + I- J+)/2
      if (two_mi == -1 && mj > -1) {
        const double amp = 0.5 * std::sqrt(i * (i + 1.0) - mi * (mi + 1.0)) *
                           std::sqrt(j * (j + 1.0) - mj * (mj - 1.0));
        h(idx(1, mj - 1), idx(-1, mj)) += hf.a_hf_MHz * amp;
        h(idx(-1, mj), idx(1, mj - 1)) += hf.a_hf_MHz * amp;
      }
    }
  }
  const EigenResult r = jacobi_eigensolve(h);

  const double f_low = hyperfine_shift(hf, 0.5);
  const double f_high = hyperfine_shift(hf, 1.5);
  CHECK(f_low == doctest::Approx(-3957.0).epsilon(1e-12));
  CHECK(f_high == doctest::Approx(1978.5).epsilon(1e-12));
  // two states at f = 1/2, four at f = 3/2
  for (int k = 0; k < 2; ++k) CHECK(r.values[k] == doctest::Approx(f_low).epsilon(1e-10));
  for (int k = 2; k < 6; ++k) CHECK(r.values[k] == doctest::Approx(f_high).epsilon(1e-10));

  CHECK_THROWS_AS(hyperfine_shift(hf, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(hyperfine_shift(hf, -0.5), std::invalid_argument);
}

TEST_CASE("quadrupole moment arrives identically by both routes") {
  const QuadrupoleSpec q;
  const double pe = intercombination_moment(q);
  CHECK(pe == doctest::Approx(std::sqrt(2.0 / 15.0) * -19.7).epsilon(1e-12));
  // the q = 0 tensor element on m = 0 carries the full moment
  CHECK(std::abs(pe - (-quadrupole_tensor_element(q, 0, 0))) < 1e-10);
}

TEST_CASE("single-atom tensor elements") {
  const QuadrupoleSpec q;
  const double pe = intercombination_moment(q);
  CHECK(quadrupole_tensor_element(q, 1, 1) == doctest::Approx(0.5 * pe).epsilon(1e-12));
  CHECK(quadrupole_tensor_element(q, -1, -1) == doctest::Approx(0.5 * pe).epsilon(1e-12));
  CHECK(quadrupole_tensor_element(q, 0, 0) == doctest::Approx(-pe).epsilon(1e-12));
  CHECK(quadrupole_tensor_element(q, 1, 0) == 0.0);
  const double trace = quadrupole_tensor_element(q, -1, -1) +
                       quadrupole_tensor_element(q, 0, 0) +
                       quadrupole_tensor_element(q, 1, 1);
  CHECK(std::abs(trace) < 1e-12);
}

TEST_CASE("pair operator structure") {
  const QuadrupoleSpec q;
  const double pe2 = intercombination_moment(q) * intercombination_moment(q);
  const SmallMat op = quad_pair_operator(q);
  REQUIRE(op.dim() == 9);

  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) CHECK(op(a, b) == doctest::Approx(op(b, a)).epsilon(1e-12));

  // commutes with atom exchange
  const auto swap_idx = [](int k) { return (k % 3) * 3 + k / 3; };
  for (int a = 0; a < 9; ++a) {
    for (int b = 0; b < 9; ++b) {
      CHECK(op(a, b) == doctest::Approx(op(swap_idx(a), swap_idx(b))).epsilon(1e-12));
    }
  }

  double trace = 0.0;
  for (int a = 0; a < 9; ++a) trace += op(a, a);
  CHECK(std::abs(trace) < 1e-10 * pe2);

  const std::vector<double> eigs = quad_pair_spectrum(q);
  REQUIRE(eigs.size() == 9);
  CHECK(eigs.front() == doctest::Approx(-6.0 * pe2).epsilon(1e-10));
  CHECK(eigs.back() == doctest::Approx(9.0 * pe2).epsilon(1e-10));

  // the symmetric (1,0) Bell combination is an exact eigenvector at -6 pe^2
  std::array<double, 9> v{};
  const auto pidx = [](int ma, int mb) { return (ma + 1) * 3 + (mb + 1); };
  v[static_cast<std::size_t>(pidx(1, 0))] = 1.0 / std::sqrt(2.0);
  v[static_cast<std::size_t>(pidx(0, 1))] = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < 9; ++a) {
    double hv = 0.0;
    for (int b = 0; b < 9; ++b) hv += op(a, b) * v[static_cast<std::size_t>(b)];
    CHECK(std::abs(hv - (-6.0 * pe2) * v[static_cast<std::size_t>(a)]) < 1e-10 * pe2);
  }
}

TEST_CASE("pair expectations") {
  const QuadrupoleSpec q;
  const double pe2 = intercombination_moment(q) * intercombination_moment(q);
  CHECK(quad_pair_expectation(q, 1, 0, +1) == doctest::Approx(-6.0 * pe2).epsilon(1e-10));
  CHECK(quad_pair_expectation(q, 1, 0, +1) !=
        doctest::Approx(quad_pair_expectation(q, 1, 0, -1)).epsilon(1e-6));
  CHECK_THROWS_AS(quad_pair_expectation(q, 1, 1, -1), std::invalid_argument);
}
