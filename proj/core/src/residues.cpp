#include "whitham/residues.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitham {

ResidueSet::ResidueSet(const AccessoryParams& A, double nu0, double nu1)
    : nu_{nu0, nu1, -nu0, -nu1}, shape_(A.shape) {
  A.validate();
  LambdaPoly xh = A.xhat_poly();
  if (!roots_in_disk(xh, 1.0 + 1e-6).empty())
    throw std::domain_error("xhat vanishes in the closed unit disk");

  std::array<LambdaPoly, 4> p, q;
  for (int k = 0; k < 4; ++k) {
    p[k] = A.p_poly(k);
    q[k] = A.q_poly(k);
  }
  LambdaPoly yh = A.yhat_poly();
  std::array<LambdaPoly, 4> yk;
  for (int k = 0; k < 4; ++k) {
    LambdaPoly prod({cplx(1.0)});
    for (int j = 0; j < 4; ++j)
      if (j != k) prod = prod * p[j];
    yk[k] = q[k] + prod * yh;
  }
  y_ = LambdaPoly({cplx(nu0)}) - p[0] * yk[0];
  p02_ = p[0] * p[2];
  p13_ = p[1] * p[3];
  y0y2_ = yk[0] * yk[2];
  y1y3_ = yk[1] * yk[3];
  xh_ = xh;
}

Mat2 ResidueSet::eval(int k, cplx lambda) const {
  Mat2 m;
  const cplx y = y_.eval(lambda);
  switch (k) {
    case 0:
    case 2: {
      if (lambda == cplx(0.0))
        throw std::domain_error("residue has a pole at lambda = 0");
      cplx ur = p02_.eval(lambda) / lambda;
      cplx ll = -y0y2_.eval(lambda) * lambda;
      if (k == 2) { ur = -ur; ll = -ll; }
      m << -y, ur, ll, y;
      return m;
    }
    case 1:
    case 3: {
      const cplx xv = xh_.eval(lambda);
      cplx ur = -y1y3_.eval(lambda) / xv;
      cplx ll = p13_.eval(lambda) * xv;
      if (k == 3) { ur = -ur; ll = -ll; }
      m << y, ur, ll, -y;
      return m;
    }
    default:
      throw std::out_of_range("residue index");
  }
}

std::array<LambdaSeries, 4> ResidueSet::entry_series(int k) const {
  const int order = shape_.N + 4 * shape_.d_p;
  const double sign = (k >= 2) ? -1.0 : 1.0;
  if (k == 0 || k == 2) {
    LambdaSeries yd = LambdaSeries::from_poly(y_, order);
    LambdaSeries ur = LambdaSeries::from_poly(sign * p02_, order).shifted(-1);
    LambdaSeries ll = LambdaSeries::from_poly(cplx(-sign) * y0y2_, order).shifted(1);
    return {cplx(-1.0) * yd, ur, ll, yd};
  }
  if (k == 1 || k == 3) {
    LambdaSeries yd = LambdaSeries::from_poly(y_, order);
    LambdaSeries xinv = inverse(LambdaSeries::from_poly(xh_, order), order);
    LambdaSeries ur = LambdaSeries::from_poly(cplx(-sign) * y1y3_, order) * xinv;
    LambdaSeries ll = LambdaSeries::from_poly(sign * (p13_ * xh_), order);
    return {yd, ur, ll, cplx(-1.0) * yd};
  }
  throw std::out_of_range("residue index");
}

Vec2 ResidueSet::eigenvector_raw(int k, cplx lambda) const {
  const Mat2 A = eval(k, lambda);
  const double mu = std::abs(nu_[k]);
  // (A - mu)(A + mu) = 0, so columns of A + mu span the mu-eigenspace.
  Mat2 B = A + mu * Mat2::Identity();
  if (B.col(0).norm() >= B.col(1).norm()) return B.col(0);
  return B.col(1);
}

ProjectivePoint ResidueSet::positive_eigenline(int k, cplx lambda) const {
  return positive_branch_eigenline(eval(k, lambda));
}

std::vector<cplx> ResidueSet::unstable_points(double tol) const {
  auto f1 = [this](cplx l) { return eigenvector_raw(1, l); };
  auto f2 = [this](cplx l) { return eigenvector_raw(2, l); };
  return coincidence_points(f1, f2, tol);
}

ResidueSet build_residues(const AccessoryParams& A, double nu0, double nu1) {
  return ResidueSet(A, nu0, nu1);
}

std::vector<cplx> coincidence_points(
    const std::function<Vec2(cplx)>& v1, const std::function<Vec2(cplx)>& v2,
    double tol, int radial_samples, int angular_samples) {
  auto g = [&](cplx l) -> cplx {
    Vec2 a = v1(l), b = v2(l);
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
      throw std::domain_error("vanishing eigenvector field");
    return det2(a, b) / (na * nb);
  };

  std::vector<cplx> found;
  auto record = [&](cplx root) {
    if (std::abs(root) >= 1.0 - 1e-9 || std::abs(root) < 1e-9) return;
    for (const cplx& r : found)
      if (std::abs(r - root) < 1e-6) return;
    found.push_back(root);
  };

  for (int i = 1; i <= radial_samples; ++i) {
    const double r = 0.98 * i / radial_samples;
    for (int j = 0; j < angular_samples; ++j) {
      const cplx l0 = r * unit_circle(2.0 * pi * j / angular_samples);
      if (std::abs(g(l0)) > 0.2) continue;
      // Damped Newton polish; |g| is scale-normalized so the magnitude is
      // a genuine misalignment measure. Damping also covers the kinks where
      // the eigenvector column choice switches.
      cplx l = l0;
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const cplx gv = g(l);
        if (std::abs(gv) < tol) { ok = true; break; }
        const double h = std::max(1e-7, 1e-7 * std::abs(l));
        const cplx dg = (g(l + h) - g(l - h)) / (2.0 * h);
        if (!finite(dg) || std::abs(dg) < 1e-14) break;
        cplx step = gv / dg;
        if (std::abs(step) > 0.2) step *= 0.2 / std::abs(step);
        cplx next = l - step;
        int halvings = 0;
        while (halvings < 12 &&
               (std::abs(next) >= 1.0 || std::abs(next) < 1e-10 ||
                std::abs(g(next)) > std::abs(gv))) {
          step *= 0.5;
          next = l - step;
          ++halvings;
        }
        if (halvings == 12) break;
        l = next;
      }
      if (ok) record(l);
    }
  }
  std::sort(found.begin(), found.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return found;
}

}  // namespace whitham
