#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace cavscat {

struct NumericalError : std::runtime_error {
  std::string module;
  std::string context;
  NumericalError(std::string mod, std::string ctx)
      : std::runtime_error(mod + ": " + ctx),
        module(std::move(mod)),
        context(std::move(ctx)) {}
};

// Dense symmetric matrix with a small fixed capacity, covering the 3x3/4x4
// sector blocks and the 9x9 quadrupole pair operator.
class SmallMat {
 public:
  static constexpr int kMaxDim = 9;

  SmallMat() = default;
  explicit SmallMat(int n) : n_(n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("SmallMat: bad dimension");
    m_.fill(0.0);
  }

  int dim() const { return n_; }
  double& operator()(int i, int j) { return m_[i * n_ + j]; }
  double operator()(int i, int j) const { return m_[i * n_ + j]; }

 private:
  int n_ = 0;
  std::array<double, kMaxDim * kMaxDim> m_{};
};

struct EigenResult {
  int n = 0;
  std::array<double, SmallMat::kMaxDim> values{};  // ascending
  SmallMat vectors;                                // column k pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations; converged when every off-diagonal element falls
// below tol relative to the Frobenius norm. Columns are sign-fixed so the
// largest-magnitude component of each eigenvector is positive.
EigenResult jacobi_eigensolve(SmallMat a, double tol = 1e-12);

}  // namespace cavscat
