#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "cavscat/angular.hpp"

using cavscat::wigner3j;

namespace {

// Independent oracle: the Racah single-sum formula evaluated entirely in log
// space with lgamma, on doubled integers. Slower and numerically different
// from the production path.
double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

bool triangle_ok(int tj1, int tj2, int tj3) {
  return tj3 >= std::abs(tj1 - tj2) && tj3 <= tj1 + tj2 && (tj1 + tj2 + tj3) % 2 == 0;
}

double oracle_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (!triangle_ok(tj1, tj2, tj3)) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;

  const int a1 = (tj1 + tj2 - tj3) / 2;
  const int a2 = (tj1 - tj2 + tj3) / 2;
  const int a3 = (-tj1 + tj2 + tj3) / 2;
  const int p = (tj1 + tj2 + tj3) / 2 + 1;
  const double log_delta = lfact(a1) + lfact(a2) + lfact(a3) - lfact(p);

  const int j1pm1 = (tj1 + tm1) / 2, j1mm1 = (tj1 - tm1) / 2;
  const int j2pm2 = (tj2 + tm2) / 2, j2mm2 = (tj2 - tm2) / 2;
  const int j3pm3 = (tj3 + tm3) / 2, j3mm3 = (tj3 - tm3) / 2;
  const double log_norm = lfact(j1pm1) + lfact(j1mm1) + lfact(j2pm2) + lfact(j2mm2) +
                          lfact(j3pm3) + lfact(j3mm3);

  const int b1 = a1;                         // j1 + j2 - j3
  const int b2 = j1mm1;                      // j1 - m1
  const int b3 = j2pm2;                      // j2 + m2
  const int c1 = (tj3 - tj2 + tm1) / 2;      // j3 - j2 + m1
  const int c2 = (tj3 - tj1 - tm2) / 2;      // j3 - j1 - m2
  const int kmin = std::max({0, -c1, -c2});
  const int kmax = std::min({b1, b2, b3});

  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double log_term = lfact(k) + lfact(b1 - k) + lfact(b2 - k) + lfact(b3 - k) +
                            lfact(c1 + k) + lfact(c2 + k);
    const double mag = std::exp(0.5 * (log_delta + log_norm) - log_term);
    sum += (k % 2 == 0 ? mag : -mag);
  }
  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  return (phase_exp % 2 == 0 ? sum : -sum);
}

}  // namespace

TEST_CASE("3j symbols match an independent log-space evaluation for all j up to 3") {
  for (int tj1 = 0; tj1 <= 6; ++tj1) {
    for (int tj2 = 0; tj2 <= 6; ++tj2) {
      for (int tj3 = 0; tj3 <= 6; ++tj3) {
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            const int tm3 = -tm1 - tm2;
            if (std::abs(tm3) > tj3) continue;
            if ((tj3 + tm3) % 2 != 0) continue;
            const double got = wigner3j(tj1 / 2.0, tj2 / 2.0, tj3 / 2.0, tm1 / 2.0,
                                        tm2 / 2.0, tm3 / 2.0);
            const double want = oracle_3j(tj1, tj2, tj3, tm1, tm2, tm3);
            CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(wigner3j(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(wigner3j(1, 2, 1, 0, 0, 0) ==
        doctest::Approx(std::sqrt(2.0 / 15.0)).epsilon(1e-14));
  CHECK(wigner3j(0.5, 0.5, 1, 0.5, -0.5, 0) ==
        doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("selection rules give exact zeros") {
  CHECK(wigner3j(1, 1, 1, 1, 1, 1) == 0.0);   // m sum
  CHECK(wigner3j(1, 1, 3, 0, 0, 0) == 0.0);   // triangle
  CHECK(wigner3j(0.5, 0.5, 0.5, 0.5, -0.5, 0.0) == 0.0);  // half-integer perimeter
  CHECK(wigner3j(1, 1, 2, 1, 1, -2) ==
        doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));  // stretched, nonzero
}

TEST_CASE("orthogonality over magnetic numbers") {
  // sum over m1 (m2 is fixed by the projection rule) at fixed j3, m3
  for (double j3 : {0.0, 1.0, 2.0}) {
    for (double m3 : {0.0, -1.0}) {
      if (std::abs(m3) > j3) continue;
      double acc = 0.0;
      for (int tm1 = -2; tm1 <= 2; tm1 += 2) {
        const double m1 = tm1 / 2.0;
        const double m2 = -m1 - m3;
        if (std::abs(m2) > 1.0) continue;
        const double w = wigner3j(1, 1, j3, m1, m2, m3);
        acc += (2.0 * j3 + 1.0) * w * w;
      }
      CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("non-half-integer arguments are rejected") {
  CHECK_THROWS_AS(wigner3j(0.3, 1, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(wigner3j(1, 1, 1, 0.25, -0.25, 0), std::invalid_argument);
}
