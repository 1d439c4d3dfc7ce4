#include "cavscat/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cavscat {

namespace {

// doubled representation: j -> 2j, exact integers throughout
long twice(double x) {
  const double t = 2.0 * x;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9)
    throw std::invalid_argument("wigner3j: argument is not a half-integer");
  return static_cast<long>(r);
}

double factorial(long n) {
  // inputs stay tiny for the j-ranges this engine needs; plain doubles suffice
  double f = 1.0;
  for (long i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  const long tj1 = twice(j1), tj2 = twice(j2), tj3 = twice(j3);
  const long tm1 = twice(m1), tm2 = twice(m2), tm3 = twice(m3);

  if (tj1 < 0 || tj2 < 0 || tj3 < 0)
    throw std::invalid_argument("wigner3j: negative angular momentum");
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0)
    return 0.0;  // m must differ from j by an integer
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (tj3 < std::labs(tj1 - tj2) || tj3 > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

  // everything below is in undoubled integer combinations
  const long a1 = (tj1 + tj2 - tj3) / 2;
  const long a2 = (tj1 - tj2 + tj3) / 2;
  const long a3 = (-tj1 + tj2 + tj3) / 2;
  const long jtot = (tj1 + tj2 + tj3) / 2;

  const double delta = std::sqrt(factorial(a1) * factorial(a2) * factorial(a3) /
                                 factorial(jtot + 1));

  const double root = std::sqrt(
      factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) *
      factorial((tj2 + tm2) / 2) * factorial((tj2 - tm2) / 2) *
      factorial((tj3 + tm3) / 2) * factorial((tj3 - tm3) / 2));

  const long b1 = (tj3 - tj2 + tm1) / 2;  // t + b1 >= 0
  const long b2 = (tj3 - tj1 - tm2) / 2;  // t + b2 >= 0
  const long c1 = a1;                     // t <= c1
  const long c2 = (tj1 - tm1) / 2;        // t <= c2
  const long c3 = (tj2 + tm2) / 2;        // t <= c3

  const long tmin = std::max({0L, -b1, -b2});
  const long tmax = std::min({c1, c2, c3});

  double sum = 0.0;
  for (long t = tmin; t <= tmax; ++t) {
    const double denom = factorial(t) * factorial(t + b1) * factorial(t + b2) *
                         factorial(c1 - t) * factorial(c2 - t) * factorial(c3 - t);
    sum += ((t % 2 == 0) ? 1.0 : -1.0) / denom;
  }

  const long phase_exp = (tj1 - tj2 - tm3) / 2;
  const double phase = (((phase_exp % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
  return phase * delta * root * sum;
}

}  // namespace cavscat
