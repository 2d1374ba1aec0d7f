#include "whitham/projective.hpp"

#include <cmath>

namespace whitham {

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::domain_error("projective_distance: zero homogeneous vector");
  return std::abs(det2(a, b)) / (na * nb);
}

cplx cross_ratio(const ProjectivePoint& a, const ProjectivePoint& b,
                 const ProjectivePoint& c, const ProjectivePoint& d) {
  cplx num = det2(a, b) * det2(c, d);
  cplx den = det2(a, d) * det2(c, b);
  double scale = a.norm() * b.norm() * c.norm() * d.norm();
  if (scale == 0.0 || std::abs(den) <= 1e-14 * scale)
    throw std::domain_error("cross_ratio: degenerate configuration");
  return num / den;
}

ProjectivePoint positive_branch_eigenline(const Mat2& a) {
  const double scale = std::max(1.0, mat_norm(a));
  cplx mu = std::sqrt(-a.determinant());
  if (mu.real() < 0.0 || (mu.real() == 0.0 && mu.imag() < 0.0)) mu = -mu;

  Mat2 proj = a + mu * Mat2::Identity();
  Vec2 v = proj.col(0);
  if (proj.col(1).norm() > v.norm()) v = proj.col(1);
  if (v.norm() <= 1e-12 * scale)
    throw std::domain_error("positive_branch_eigenline: defective eigenspace");
  v.normalize();
  if ((a * v - mu * v).norm() > 1e-8 * scale)
    throw std::domain_error("positive_branch_eigenline: residual check failed");
  return v;
}

ProjectivePoint positive_eigenline(const Mat2& a, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("positive_eigenline: nu must be positive");
  const double scale = std::max(1.0, mat_norm(a));
  cplx det = a.determinant();
  // Traceless 2x2: eigenvalues are +-sqrt(-det).
  cplx mu = std::sqrt(-det);
  if (mu.real() < 0.0) mu = -mu;
  if (std::abs(mu - cplx(nu)) > 1e-6 * scale)
    throw std::domain_error("positive_eigenline: eigenvalues do not match nu");

  // (A - mu)(A + mu) = 0, so the columns of A + mu span the +mu eigenline.
  Mat2 proj = a + mu * Mat2::Identity();
  Vec2 v = proj.col(0);
  if (proj.col(1).norm() > v.norm()) v = proj.col(1);
  if (v.norm() == 0.0)
    throw std::domain_error("positive_eigenline: defective eigenspace");
  v.normalize();
  if ((a * v - mu * v).norm() > 1e-10 * scale)
    throw std::domain_error("positive_eigenline: residual check failed");
  return v;
}

}  // namespace whitham
