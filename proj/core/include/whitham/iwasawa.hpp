#pragma once

#include <vector>

#include "whitham/circle.hpp"
#include "whitham/numeric.hpp"

namespace whitham {

// Loop factorization Phi = F * B on the unit circle: F unitary-valued,
// B analytic in the disk with B(0) upper triangular with positive diagonal.
// B is returned as a polynomial truncation of degree K.
struct LoopFactorization {
  std::vector<Mat2> b;      // coefficients of B, ascending powers 0..K
  double residual = 0.0;    // max over input samples of ||F^* F - I||

  Mat2 b_eval(cplx lambda) const;
  Mat2 unitary_at(const Mat2& phi, cplx lambda) const;
};

// Bauer spectral factorization of P = Phi^* Phi through a block Toeplitz
// Cholesky. phi_circle holds Phi at CircleSampling{n} nodes; the block
// count is K + extra_blocks and must stay well below n to avoid aliasing.
// Throws ConvergenceError when the truncated factor leaves a unitarity
// defect above fail_tol.
LoopFactorization iwasawa_factor(const std::vector<Mat2>& phi_circle, int K,
                                 int extra_blocks = 32, double fail_tol = 1e-6);

}  // namespace whitham
