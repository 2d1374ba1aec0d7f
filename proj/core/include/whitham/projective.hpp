#pragma once

#include "whitham/numeric.hpp"

namespace whitham {

// Points of CP^1 as nonzero homogeneous coordinate pairs.
using ProjectivePoint = Vec2;

inline ProjectivePoint affine_point(cplx z) { return ProjectivePoint(z, 1.0); }

inline cplx det2(const ProjectivePoint& a, const ProjectivePoint& b) {
  return a(0) * b(1) - a(1) * b(0);
}

// Scale-invariant distance between projective points, in [0, 1].
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);

// Cross ratio via 2x2 determinants of homogeneous coordinates. For affine
// points (z, 1) this reduces to ((a-b)(c-d)) / ((a-d)(c-b)). Throws
// domain_error when the denominator degenerates.
cplx cross_ratio(const ProjectivePoint& a, const ProjectivePoint& b,
                 const ProjectivePoint& c, const ProjectivePoint& d);

// Eigenline of a traceless 2x2 matrix for its eigenvalue +nu (nu > 0).
// The matrix must actually have eigenvalues +-nu: if sqrt(-det A) differs
// from nu beyond tolerance, throws domain_error. The returned vector is
// normalized and satisfies |A v - nu v| <= 1e-10 * |A|.
ProjectivePoint positive_eigenline(const Mat2& a, double nu);

// Same, but for the eigenvalue branch mu = sqrt(-det A) with Re mu >= 0 and
// no expectation on its value. Solver iterates pass through here while the
// eigenvalue constraint is still nonzero.
ProjectivePoint positive_branch_eigenline(const Mat2& a);

}  // namespace whitham
