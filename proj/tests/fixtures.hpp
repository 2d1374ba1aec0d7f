#pragma once

#include <array>
#include <random>

#include "test_util.hpp"
#include "whitham/accessory.hpp"
#include "whitham/lambda_poly.hpp"
#include "whitham/residues.hpp"

namespace whitham::testutil {

// Random accessory parameters satisfying the eigenvalue constraint exactly:
// a common degree-2 polynomial e := p_k q_k - nu_k is interpolated through
// three random pole offsets and the fourth offset solves e(x) = -nu_3, so
// every q_k divides out exactly. Draws are rejected until the p and xhat
// roots stay away from the unit circle and the residues are of moderate
// size there, keeping monodromy integration well conditioned.
inline AccessoryParams random_constrained(std::mt19937_64& g,
                                          const std::array<double, 4>& nu) {
  std::uniform_real_distribution<double> U(1.15, 2.0), S(-1.0, 1.0);
  AccessoryShape shape;
  for (;;) {
    double a[4];
    for (int k = 0; k < 3; ++k) a[k] = (S(g) > 0 ? 1 : -1) * U(g);
    bool sep = true;
    for (int j = 0; j < 3; ++j)
      for (int k = j + 1; k < 3; ++k)
        sep = sep && std::abs(a[j] - a[k]) > 0.4;
    if (!sep) continue;

    Eigen::Matrix3d V;
    Eigen::Vector3d rhs;
    for (int k = 0; k < 3; ++k) {
      double x = -a[k];
      V(k, 0) = 1;
      V(k, 1) = x;
      V(k, 2) = x * x;
      rhs(k) = -nu[k];
    }
    Eigen::Vector3d e = V.fullPivLu().solve(rhs);
    double c0 = e(0) + nu[3], c1 = e(1), c2 = e(2);
    if (std::abs(c2) < 1e-6) continue;
    double disc = c1 * c1 - 4.0 * c0 * c2;
    if (disc <= 1e-8) continue;
    double x = (-c1 + std::sqrt(disc)) / (2.0 * c2);
    a[3] = -x;
    bool bad = std::abs(a[3]) < 1.15 || std::abs(a[3]) > 2.2;
    for (int k = 0; k < 3; ++k) bad = bad || std::abs(a[3] - a[k]) < 0.3;
    if (bad) continue;

    AccessoryParams A;
    A.shape = shape;
    bool big_q = false;
    for (int k = 0; k < 4; ++k) {
      A.p[k] = {a[k], 1.0};
      double r2 = e(2);
      double r1 = e(1) - r2 * a[k];
      A.q[k] = {r1, r2};
      big_q = big_q || std::abs(r1) > 3.0 || std::abs(r2) > 3.0;
    }
    if (big_q) continue;
    A.xhat.assign(shape.N + 1, 0.0);
    A.yhat.assign(shape.N + 1, 0.0);
    A.xhat[0] = 1.0 + U(g);
    for (int j = 1; j <= shape.N; ++j) {
      A.xhat[j] = 0.1 * S(g);
      A.yhat[j] = 0.1 * S(g);
    }
    A.yhat[0] = 0.1 * S(g);
    if (!roots_in_disk(A.xhat_poly(), 1.5).empty()) continue;

    ResidueSet res(A, nu[0], nu[1]);
    double rmax = 0.0;
    for (int s = 0; s < 16; ++s) {
      cplx lam = unit_circle(2.0 * pi * (s + 0.21) / 16.0);
      for (int k = 0; k < 4; ++k)
        rmax = std::max(rmax, mat_norm(res.eval(k, lam)));
    }
    if (rmax > 30.0) continue;
    return A;
  }
}

}  // namespace whitham::testutil
