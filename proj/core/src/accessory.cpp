#include "whitham/accessory.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace whitham {

namespace {

LambdaPoly real_poly(const std::vector<double>& c) {
  LambdaPoly p;
  p.c.assign(c.begin(), c.end());
  return p;
}

}  // namespace

AccessoryParams AccessoryParams::zero(const AccessoryShape& shape) {
  AccessoryParams a;
  a.shape = shape;
  for (int k = 0; k < 4; ++k) {
    a.p[k].assign(shape.d_p + 1, 0.0);
    a.p[k].back() = 1.0;
    a.q[k].assign(shape.d_q + 1, 0.0);
  }
  a.xhat.assign(shape.N + 1, 0.0);
  a.yhat.assign(shape.N + 1, 0.0);
  return a;
}

LambdaPoly AccessoryParams::p_poly(int k) const { return real_poly(p.at(k)); }
LambdaPoly AccessoryParams::q_poly(int k) const { return real_poly(q.at(k)); }
LambdaPoly AccessoryParams::xhat_poly() const { return real_poly(xhat); }
LambdaPoly AccessoryParams::yhat_poly() const { return real_poly(yhat); }

void AccessoryParams::validate() const {
  for (int k = 0; k < 4; ++k) {
    if (static_cast<int>(p[k].size()) != shape.d_p + 1)
      throw std::invalid_argument("p coefficient count mismatch");
    if (static_cast<int>(q[k].size()) != shape.d_q + 1)
      throw std::invalid_argument("q coefficient count mismatch");
    if (p[k].back() != 1.0)
      throw std::invalid_argument("p_k must be monic");
    for (double v : p[k])
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite p coefficient");
    for (double v : q[k])
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite q coefficient");
  }
  if (static_cast<int>(xhat.size()) != shape.N + 1 ||
      static_cast<int>(yhat.size()) != shape.N + 1)
    throw std::invalid_argument("series coefficient count mismatch");
  for (double v : xhat)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite xhat coefficient");
  for (double v : yhat)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite yhat coefficient");
  if (xhat[0] == 0.0)
    throw std::invalid_argument("xhat constant term must be nonzero");
}

std::vector<double> AccessoryParams::pack() const {
  std::vector<double> x;
  x.reserve(shape.unknown_count());
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < shape.d_p; ++i) x.push_back(p[k][i]);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i <= shape.d_q; ++i) x.push_back(q[k][i]);
  for (int i = 0; i <= shape.N; ++i) x.push_back(xhat[i]);
  for (int i = 0; i <= shape.N; ++i) x.push_back(yhat[i]);
  return x;
}

AccessoryParams AccessoryParams::unpack(const AccessoryShape& shape,
                                        const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != shape.unknown_count())
    throw std::invalid_argument("unknown vector length mismatch");
  AccessoryParams a = zero(shape);
  std::size_t j = 0;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < shape.d_p; ++i) a.p[k][i] = x[j++];
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i <= shape.d_q; ++i) a.q[k][i] = x[j++];
  for (int i = 0; i <= shape.N; ++i) a.xhat[i] = x[j++];
  for (int i = 0; i <= shape.N; ++i) a.yhat[i] = x[j++];
  return a;
}

std::vector<cplx> accessory_constraint(const AccessoryParams& A,
                                       const std::array<double, 4>& nu) {
  const int len = A.shape.d_p + A.shape.d_q + 1;
  std::vector<cplx> out;
  out.reserve(3 * len);
  LambdaPoly r0 = A.p_poly(0) * A.q_poly(0);
  r0 = r0 + LambdaPoly({cplx(-nu[0])});
  for (int k = 1; k < 4; ++k) {
    LambdaPoly rk = A.p_poly(k) * A.q_poly(k);
    rk = rk + LambdaPoly({cplx(-nu[k])});
    LambdaPoly e = r0 - rk;
    for (int i = 0; i < len; ++i)
      out.push_back(i < static_cast<int>(e.c.size()) ? e.c[i] : cplx(0.0));
  }
  return out;
}

std::vector<double> constraint_q_jacobian(const AccessoryParams& A) {
  const int len = A.shape.d_p + A.shape.d_q + 1;
  const int rows = 3 * len;
  const int qn = A.shape.d_q + 1;
  const int cols = 4 * qn;
  std::vector<double> L(static_cast<std::size_t>(rows) * cols, 0.0);
  auto at = [&](int r, int c) -> double& { return L[static_cast<std::size_t>(r) * cols + c]; };
  // Row block for e_0k, coefficient m: sum_a p_0[a] q_0[m-a] - p_k[a] q_k[m-a].
  for (int blk = 0; blk < 3; ++blk) {
    const int k = blk + 1;
    for (int m = 0; m < len; ++m) {
      for (int b = 0; b < qn; ++b) {
        const int a = m - b;
        if (a < 0 || a > A.shape.d_p) continue;
        at(blk * len + m, 0 * qn + b) += A.p[0][a];
        at(blk * len + m, k * qn + b) -= A.p[k][a];
      }
    }
  }
  return L;
}

AccessoryParams project_constraint(const AccessoryParams& A,
                                   const std::array<double, 4>& nu) {
  const int len = A.shape.d_p + A.shape.d_q + 1;
  const int rows = 3 * len;
  const int qn = A.shape.d_q + 1;
  const int cols = 4 * qn;
  std::vector<double> Lr = constraint_q_jacobian(A);
  Eigen::MatrixXd L(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) L(r, c) = Lr[static_cast<std::size_t>(r) * cols + c];
  std::vector<cplx> ca = accessory_constraint(A, nu);
  Eigen::VectorXd rhs(rows);
  for (int r = 0; r < rows; ++r) rhs(r) = -ca[r].real();
  Eigen::VectorXd dq = L.completeOrthogonalDecomposition().solve(rhs);
  AccessoryParams out = A;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < qn; ++i) out.q[k][i] += dq(k * qn + i);
  return out;
}

AccessoryParams default_guess(const AccessoryShape& shape,
                              const std::array<double, 4>& nu) {
  const double m = 1.5;
  AccessoryParams a = AccessoryParams::zero(shape);
  a.p[0][0] = m;
  a.p[1][0] = m;
  a.p[2][0] = -m;
  a.p[3][0] = -m;
  a.xhat[0] = 1.0;
  return project_constraint(a, nu);
}

}  // namespace whitham
