#pragma once

#include <array>

#include "whitham/geometry_params.hpp"
#include "whitham/residues.hpp"

namespace whitham {

// The z-dependence of the potential at one fixed loop parameter: the four
// residue matrices are cached so each evaluation of
//   xi(z) = sum_k A_k / (z - z_k)
// costs four scalar divisions.
struct PotentialAtLambda {
  std::array<Mat2, 4> A;
  std::array<cplx, 4> z;

  PotentialAtLambda(const ResidueSet& res, const PoleConfig& poles, cplx lambda);
  // Explicit residues and pole positions, for transformed charts.
  PotentialAtLambda(const std::array<Mat2, 4>& residues,
                    const std::array<cplx, 4>& pole_positions);

  Mat2 eval(cplx zz) const;
};

Mat2 potential_eval(const ResidueSet& res, const PoleConfig& poles, cplx z,
                    cplx lambda);

}  // namespace whitham
