#pragma once

#include <array>
#include <functional>
#include <vector>

#include "whitham/accessory.hpp"
#include "whitham/lambda_series.hpp"
#include "whitham/numeric.hpp"
#include "whitham/projective.hpp"

namespace whitham {

// The four residue matrices A_k(lambda) of the potential, assembled from
// accessory parameters. Auxiliary quantities, with p := p_0 p_1 p_2 p_3 and
// y_k := q_k + (p / p_k) yhat:
//   y := nu_0 - p_0 y_0   (k-independent whenever the constraint vanishes)
//   A_0 = [[-y, p_0 p_2 / lambda], [-y_0 y_2 lambda, y]]
//   A_1 = [[y, -y_1 y_3 / xhat], [p_1 p_3 xhat, -y]]
//   A_2 = sigma A_0 sigma^-1, A_3 = sigma A_1 sigma^-1, sigma = diag(i, -i),
// so A_2, A_3 negate the off-diagonal entries. All entries except the xhat
// reciprocal are Laurent polynomials, so matrix evaluation is pointwise
// exact; the series view truncates 1/xhat at N + 4 d_p.
class ResidueSet {
 public:
  ResidueSet(const AccessoryParams& A, double nu0, double nu1);

  double nu(int k) const { return nu_[k]; }
  const AccessoryShape& shape() const { return shape_; }

  // A_k(lambda). lambda = 0 is a pole of A_0 and A_2.
  Mat2 eval(int k, cplx lambda) const;

  // Truncated series of the four entries of A_k, row major.
  std::array<LambdaSeries, 4> entry_series(int k) const;

  // Eigenvector for the positive eigenvalue |nu_k| of A_k(lambda),
  // analytic in lambda up to the column choice (no normalization).
  Vec2 eigenvector_raw(int k, cplx lambda) const;
  // Unit-norm version with the residual check from projective.hpp.
  ProjectivePoint positive_eigenline(int k, cplx lambda) const;

  // Points in the punctured open unit disk where the positive eigenlines
  // of A_1 and A_2 coincide. Meaningful when the accessory constraint
  // vanishes (lambda-independent eigenvalues).
  std::vector<cplx> unstable_points(double tol = 1e-8) const;

 private:
  std::array<double, 4> nu_;
  AccessoryShape shape_;
  LambdaPoly y_, p02_, y0y2_, p13_, y1y3_, xh_;
};

ResidueSet build_residues(const AccessoryParams& A, double nu0, double nu1);

// Zeros of det[v1(lambda) | v2(lambda)] in the punctured open unit disk for
// two analytic vector fields: coarse polar grid scan, then Newton polish on
// the determinant with a central-difference derivative. Points that fail to
// polish below tol are dropped.
std::vector<cplx> coincidence_points(
    const std::function<Vec2(cplx)>& v1, const std::function<Vec2(cplx)>& v2,
    double tol, int radial_samples = 48, int angular_samples = 96);

}  // namespace whitham
