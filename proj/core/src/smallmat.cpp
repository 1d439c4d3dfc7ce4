#include "cavscat/smallmat.hpp"

#include <algorithm>
#include <cmath>

namespace cavscat {

EigenResult jacobi_eigensolve(SmallMat a, double tol) {
  const int n = a.dim();
  SmallMat v(n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;

  double fnorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fnorm += a(i, j) * a(i, j);
  fnorm = std::sqrt(fnorm);
  const double thresh = std::max(tol * fnorm, 1e-300);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= thresh) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= thresh) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps)
    throw NumericalError("smallmat", "jacobi sweep limit reached without convergence");

  EigenResult r;
  r.n = n;
  r.vectors = SmallMat(n);
  r.sweeps = sweep;

  std::array<int, SmallMat::kMaxDim> order{};
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.begin() + n,
            [&](int i, int j) { return a(i, i) < a(j, j); });

  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    r.values[k] = a(src, src);
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(imax, src))) imax = i;
    const double sign = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) r.vectors(i, k) = sign * v(i, src);
  }
  return r;
}

}  // namespace cavscat
