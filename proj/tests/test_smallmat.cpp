#include <array>
#include <cmath>
#include <random>

#include "doctest.h"

#include "cavscat/smallmat.hpp"

using namespace cavscat;

namespace {

SmallMat random_symmetric(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  SmallMat a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = dist(gen);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

double frob(const SmallMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("diagonal input returns sorted eigenvalues") {
  SmallMat a(4);
  a(0, 0) = 3.0;
  a(1, 1) = -1.0;
  a(2, 2) = 7.0;
  a(3, 3) = 0.5;
  const EigenResult r = jacobi_eigensolve(a);
  CHECK(r.values[0] == doctest::Approx(-1.0));
  CHECK(r.values[1] == doctest::Approx(0.5));
  CHECK(r.values[2] == doctest::Approx(3.0));
  CHECK(r.values[3] == doctest::Approx(7.0));
}

TEST_CASE("two by two closed form") {
  const double a = 1.7, b = -2.3, c = 0.4;
  SmallMat m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = b;
  m(1, 1) = c;
  const double mean = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  const EigenResult r = jacobi_eigensolve(m);
  CHECK(r.values[0] == doctest::Approx(mean - rad).epsilon(1e-14));
  CHECK(r.values[1] == doctest::Approx(mean + rad).epsilon(1e-14));
}

TEST_CASE("residuals, orthonormality, order and trace on random matrices") {
  for (unsigned seed : {7u, 19u, 123u}) {
    for (int n : {3, 4, 9}) {
      const SmallMat a = random_symmetric(n, seed + static_cast<unsigned>(n));
      const EigenResult r = jacobi_eigensolve(a);
      const double scale = frob(a);

      double trace = 0.0, sum = 0.0;
      for (int i = 0; i < n; ++i) {
        trace += a(i, i);
        sum += r.values[i];
      }
      CHECK(std::abs(trace - sum) < 1e-11 * scale);

      for (int k = 0; k + 1 < n; ++k) CHECK(r.values[k] <= r.values[k + 1]);

      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
          double av = 0.0;
          for (int j = 0; j < n; ++j) av += a(i, j) * r.vectors(j, k);
          CHECK(std::abs(av - r.values[k] * r.vectors(i, k)) < 1e-10 * scale);
        }
        for (int l = 0; l < n; ++l) {
          double dot = 0.0;
          for (int i = 0; i < n; ++i) dot += r.vectors(i, k) * r.vectors(i, l);
          CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("repeat solves are bit identical") {
  const SmallMat a = random_symmetric(5, 42);
  const EigenResult r1 = jacobi_eigensolve(a);
  const EigenResult r2 = jacobi_eigensolve(a);
  for (int i = 0; i < 5; ++i) {
    CHECK(r1.values[i] == r2.values[i]);
    for (int j = 0; j < 5; ++j) CHECK(r1.vectors(i, j) == r2.vectors(i, j));
  }
}

TEST_CASE("dimension limits") {
  CHECK_THROWS_AS(SmallMat(0), std::invalid_argument);
  CHECK_THROWS_AS(SmallMat(10), std::invalid_argument);
}
