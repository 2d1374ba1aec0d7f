#include "whitham/iwasawa.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <stdexcept>

namespace whitham {

Mat2 LoopFactorization::b_eval(cplx lambda) const {
  Mat2 acc = Mat2::Zero();
  for (std::size_t k = b.size(); k-- > 0;) acc = acc * lambda + b[k];
  return acc;
}

Mat2 LoopFactorization::unitary_at(const Mat2& phi, cplx lambda) const {
  Mat2 bv = b_eval(lambda);
  cplx det = bv(0, 0) * bv(1, 1) - bv(0, 1) * bv(1, 0);
  if (std::abs(det) < 1e-14)
    throw ConvergenceError("positive factor singular at evaluation point");
  Mat2 inv;
  inv << bv(1, 1), -bv(0, 1), -bv(1, 0), bv(0, 0);
  return phi * (inv / det);
}

LoopFactorization iwasawa_factor(const std::vector<Mat2>& phi_circle, int K,
                                 int extra_blocks, double fail_tol) {
  const int n = static_cast<int>(phi_circle.size());
  if (n < 8) throw std::invalid_argument("iwasawa_factor: too few circle samples");
  if (K < 0) throw std::invalid_argument("iwasawa_factor: negative truncation");
  const int blocks = K + std::max(extra_blocks, 1);
  if (2 * blocks > n)
    throw std::invalid_argument("iwasawa_factor: block count too large for sample count");

  CircleSampling circle{n};

  // Fourier blocks of P^T where P = Phi^* Phi. Factoring the transpose
  // and transposing back yields B(0) upper triangular instead of lower.
  std::vector<Mat2> pt(n);
  for (int s = 0; s < n; ++s) {
    Mat2 p = phi_circle[s].adjoint() * phi_circle[s];
    pt[s] = p.transpose();
  }

  std::vector<Mat2> phat(2 * blocks - 1);
  for (int k = -(blocks - 1); k <= blocks - 1; ++k) {
    Mat2 acc = Mat2::Zero();
    for (int s = 0; s < n; ++s) {
      cplx w = std::conj(circle.point(static_cast<int>(static_cast<long long>(k) * s % n)));
      acc += pt[s] * w;
    }
    phat[k + blocks - 1] = acc / double(n);
  }

  Eigen::MatrixXcd gram(2 * blocks, 2 * blocks);
  for (int m = 0; m < blocks; ++m)
    for (int l = 0; l < blocks; ++l)
      gram.block<2, 2>(2 * m, 2 * l) = phat[(m - l) + blocks - 1];

  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw ConvergenceError("spectral factorization Gram matrix not positive definite");
  Eigen::MatrixXcd low = llt.matrixL();

  // The reversed last block row of the Cholesky factor converges to the
  // spectral factor of P^T; its transpose is B.
  LoopFactorization out;
  out.b.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    Mat2 c = low.block<2, 2>(2 * (blocks - 1), 2 * (blocks - 1 - k));
    out.b[k] = c.transpose();
  }

  for (int s = 0; s < n; ++s) {
    Mat2 f = out.unitary_at(phi_circle[s], circle.point(s));
    double defect = mat_norm(Mat2(f.adjoint() * f - Mat2::Identity()));
    out.residual = std::max(out.residual, defect);
  }
  if (out.residual > fail_tol)
    throw ConvergenceError("loop factorization truncation insufficient", out.residual);
  return out;
}

}  // namespace whitham
