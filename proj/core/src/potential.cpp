#include "whitham/potential.hpp"

#include <stdexcept>

namespace whitham {

PotentialAtLambda::PotentialAtLambda(const ResidueSet& res,
                                     const PoleConfig& poles, cplx lambda) {
  for (int k = 0; k < 4; ++k) {
    A[k] = res.eval(k, lambda);
    z[k] = poles.z[k];
  }
}

PotentialAtLambda::PotentialAtLambda(const std::array<Mat2, 4>& residues,
                                     const std::array<cplx, 4>& pole_positions)
    : A(residues), z(pole_positions) {}

Mat2 PotentialAtLambda::eval(cplx zz) const {
  Mat2 out = Mat2::Zero();
  for (int k = 0; k < 4; ++k) {
    const cplx d = zz - z[k];
    if (d == cplx(0.0))
      throw std::domain_error("potential evaluated at a pole");
    out += A[k] / d;
  }
  return out;
}

Mat2 potential_eval(const ResidueSet& res, const PoleConfig& poles, cplx z,
                    cplx lambda) {
  return PotentialAtLambda(res, poles, lambda).eval(z);
}

}  // namespace whitham
