#include "whitham/lambda_poly.hpp"

#include <algorithm>
#include <cmath>

namespace whitham {

int LambdaPoly::degree() const {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[i] != cplx(0.0)) return i;
  return -1;
}

bool LambdaPoly::is_zero() const { return degree() < 0; }

cplx LambdaPoly::eval(cplx lambda) const {
  cplx acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * lambda + c[i];
  return acc;
}

LambdaPoly LambdaPoly::derivative() const {
  if (c.size() <= 1) return LambdaPoly{};
  std::vector<cplx> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
  return LambdaPoly(std::move(d));
}

bool LambdaPoly::real_coefficients() const {
  return std::all_of(c.begin(), c.end(), [](const cplx& z) { return z.imag() == 0.0; });
}

LambdaPoly LambdaPoly::trimmed(double eps) const {
  std::vector<cplx> out = c;
  while (!out.empty() && std::abs(out.back()) <= eps) out.pop_back();
  return LambdaPoly(std::move(out));
}

LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b) {
  std::vector<cplx> out(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) out[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) out[i] += b.c[i];
  return LambdaPoly(std::move(out));
}

LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b) {
  return a + (cplx(-1.0) * b);
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.c.empty() || b.c.empty()) return LambdaPoly{};
  std::vector<cplx> out(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
  return LambdaPoly(std::move(out));
}

LambdaPoly operator*(cplx s, const LambdaPoly& a) {
  std::vector<cplx> out = a.c;
  for (auto& v : out) v *= s;
  return LambdaPoly(std::move(out));
}

LambdaPoly monic_from_lower(const std::vector<cplx>& lower) {
  std::vector<cplx> out = lower;
  out.push_back(1.0);
  return LambdaPoly(std::move(out));
}

namespace {

double coeff_scale(const LambdaPoly& p) {
  double s = 0.0;
  for (const auto& v : p.c) s = std::max(s, std::abs(v));
  return s > 0.0 ? s : 1.0;
}

cplx newton_polish(const LambdaPoly& p, const LambdaPoly& dp, cplx z) {
  for (int it = 0; it < 40; ++it) {
    cplx f = p.eval(z);
    cplx d = dp.eval(z);
    if (std::abs(d) == 0.0) break;
    cplx step = f / d;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

}  // namespace

std::vector<cplx> all_roots(const LambdaPoly& p_in) {
  LambdaPoly p = p_in.trimmed(0.0);
  int n = p.degree();
  if (n < 0) throw std::invalid_argument("all_roots: zero polynomial");
  std::vector<cplx> roots;

  // Factor out roots at the origin.
  size_t lead_zeros = 0;
  while (lead_zeros < p.c.size() && p.c[lead_zeros] == cplx(0.0)) ++lead_zeros;
  for (size_t i = 0; i < lead_zeros; ++i) roots.push_back(0.0);
  if (lead_zeros > 0) {
    p = LambdaPoly(std::vector<cplx>(p.c.begin() + lead_zeros, p.c.end()));
    n = p.degree();
  }
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-p.c[0] / p.c[1]);
    return roots;
  }

  // Cauchy bound for the initial circle of guesses.
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p.c[i] / p.c[n]));
  double r0 = 1.0 + bound;

  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = 0.85 * r0 * unit_circle(2.0 * pi * (i + 0.35) / n);

  LambdaPoly dp = p.derivative();
  const double scale = coeff_scale(p);
  bool converged = false;
  for (int it = 0; it < 200 && !converged; ++it) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      cplx f = p.eval(z[i]);
      if (std::abs(f) <= 1e-14 * scale) continue;
      cplx d = dp.eval(z[i]);
      cplx ratio = (std::abs(d) > 0.0) ? f / d : cplx(1e-3);
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      cplx denom = 1.0 - ratio * sum;
      cplx step = (std::abs(denom) > 1e-300) ? ratio / denom : ratio;
      z[i] -= step;
      if (std::abs(step) > 1e-13 * (1.0 + std::abs(z[i]))) converged = false;
    }
  }

  for (int i = 0; i < n; ++i) {
    z[i] = newton_polish(p, dp, z[i]);
    if (!finite(z[i]))
      throw ConvergenceError("all_roots: Aberth iteration produced non-finite root");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<cplx> roots_in_disk(const LambdaPoly& p, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("roots_in_disk: radius must be positive");
  std::vector<cplx> inside;
  const double scale = coeff_scale(p);
  LambdaPoly dp = p.derivative();
  for (cplx r : all_roots(p)) {
    if (std::abs(r) >= radius) continue;
    r = newton_polish(p, dp, r);
    if (std::abs(p.eval(r)) > 1e-12 * scale)
      throw ConvergenceError("roots_in_disk: Newton polish failed", std::abs(p.eval(r)));
    inside.push_back(r);
  }
  std::sort(inside.begin(), inside.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return inside;
}

}  // namespace whitham
