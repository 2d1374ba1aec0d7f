#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace whitham {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

constexpr double pi = 3.14159265358979323846264338327950288;

inline cplx unit_circle(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Inverse of an SL(2,C) matrix via the adjugate; exact up to rounding and
// much better conditioned than a generic solve when det == 1.
inline Mat2 sl2_inverse(const Mat2& m) {
  Mat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv;
}

inline double mat_norm(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

inline bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline bool finite(const Mat2& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!finite(m(i, j))) return false;
  return true;
}

// Distance to the nearer of +-identity, used for closure checks.
inline double dist_to_pm_identity(const Mat2& m) {
  const Mat2 id = Mat2::Identity();
  return std::min(mat_norm(m - id), mat_norm(m + id));
}

struct ConvergenceError : std::runtime_error {
  double best_residual;
  explicit ConvergenceError(const std::string& what, double best = -1.0)
      : std::runtime_error(what), best_residual(best) {}
};

}  // namespace whitham
