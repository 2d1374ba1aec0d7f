#pragma once

#include <vector>

#include "whitham/monodromy.hpp"

namespace whitham {

// Diagonal loop D(lambda) = diag(sqrt r, 1/sqrt r) conjugating the
// monodromy generators into SU(2), sampled on the unit circle. The phase
// gauge is fixed by r real positive; the leftover freedom is an ambient
// isometry of the 3-sphere.
struct UnitarizerLoop {
  std::vector<cplx> lambdas;
  std::vector<double> r;
  double worst_residual = 0.0;  // max over samples and generators
};

// r at one sample, from the off-diagonal balance r^2 = -c / conj(b) of the
// best-conditioned generator, verified against all four. Throws
// domain_error when r^2 is not real positive (not unitarizable) and
// ConvergenceError when another generator stays non-unitary beyond 10x tol.
double unitarizer_r(const MonodromyGenerators& gen, double tol,
                    double* residual_out = nullptr);

inline Mat2 unitarizer_matrix(double r) {
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::sqrt(r);
  d(1, 1) = 1.0 / std::sqrt(r);
  return d;
}

UnitarizerLoop diagonal_unitarizer(const std::vector<MonodromyGenerators>& gens,
                                   double tol);

}  // namespace whitham
