#pragma once

#include <array>
#include <vector>

#include "whitham/lambda_poly.hpp"

namespace whitham {

// Degrees of the polynomial unknowns. p_k are monic of degree d_p, q_k have
// degree d_q, and the two disk functions are truncated to power N.
struct AccessoryShape {
  int d_p = 1;
  int d_q = 1;
  int N = 4;

  int unknown_count() const {
    return 4 * d_p + 4 * (d_q + 1) + 2 * (N + 1);
  }
  // e_jk = (p_j q_j - nu_j) - (p_k q_k - nu_k) has degree d_p + d_q; three
  // of them stacked coefficientwise.
  int constraint_count() const { return 3 * (d_p + d_q + 1); }
};

// Free coefficients of the residue parametrization. All coefficients are
// real so that the reality symmetry of the potential holds structurally.
struct AccessoryParams {
  AccessoryShape shape;
  std::array<std::vector<double>, 4> p;  // monic, size d_p + 1, leading 1
  std::array<std::vector<double>, 4> q;  // size d_q + 1
  std::vector<double> xhat;              // size N + 1
  std::vector<double> yhat;              // size N + 1

  static AccessoryParams zero(const AccessoryShape& shape);

  LambdaPoly p_poly(int k) const;
  LambdaPoly q_poly(int k) const;
  LambdaPoly xhat_poly() const;
  LambdaPoly yhat_poly() const;

  void validate() const;

  // Flat real vector of the free coefficients, in a fixed order: p_0..p_3
  // without the monic leading 1, then q_0..q_3, then xhat, then yhat.
  std::vector<double> pack() const;
  static AccessoryParams unpack(const AccessoryShape& shape,
                                const std::vector<double>& x);
};

// Coefficients of (e_01, e_02, e_03) where
// e_jk = (p_j q_j - nu_j) - (p_k q_k - nu_k).
// Zero exactly when the residue eigenvalues are lambda-independent.
std::vector<cplx> accessory_constraint(const AccessoryParams& A,
                                       const std::array<double, 4>& nu);

// The constraint is affine in the q coefficients: C_A = L q + c0 with q the
// stacked q_0..q_3 coefficient vector. Returns L as constraint_count x
// 4*(d_q+1) real matrix in row-major order.
std::vector<double> constraint_q_jacobian(const AccessoryParams& A);

// Minimal-norm correction of the q coefficients putting C_A to zero (the
// constraint is affine in q, so this is one least-squares solve).
AccessoryParams project_constraint(const AccessoryParams& A,
                                   const std::array<double, 4>& nu);

// Starting guess: p_0 = p_1 = lambda + m, p_2 = p_3 = lambda - m with
// m = 3/2, xhat = 1, yhat = 0, q_k constants solving C_A = 0 in the least
// squares sense (exact when nu_0 = nu_1).
AccessoryParams default_guess(const AccessoryShape& shape,
                              const std::array<double, 4>& nu);

inline std::array<double, 4> nu_array(double nu0, double nu1) {
  return {nu0, nu1, -nu0, -nu1};
}

}  // namespace whitham
