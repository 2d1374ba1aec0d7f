#include "whitham/lambda_series.hpp"

#include <algorithm>
#include <cmath>

namespace whitham {

LambdaSeries LambdaSeries::from_poly(const LambdaPoly& p, int order) {
  std::vector<cplx> c(static_cast<size_t>(order) + 1, 0.0);
  for (size_t i = 0; i < p.c.size() && i < c.size(); ++i) c[i] = p.c[i];
  return LambdaSeries(0, std::move(c));
}

LambdaSeries LambdaSeries::constant(cplx v, int order) {
  std::vector<cplx> c(static_cast<size_t>(order) + 1, 0.0);
  c[0] = v;
  return LambdaSeries(0, std::move(c));
}

cplx LambdaSeries::coeff(int power) const {
  int idx = power - min_power;
  if (idx < 0 || idx >= static_cast<int>(c.size())) return 0.0;
  return c[idx];
}

cplx LambdaSeries::eval(cplx lambda) const {
  if (c.empty()) return 0.0;
  if (min_power < 0 && lambda == cplx(0.0))
    throw std::domain_error("LambdaSeries::eval: Laurent part at lambda = 0");
  // Horner on the regular part, explicit powers for the Laurent part.
  cplx acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * lambda + c[i];
  if (min_power > 0) {
    acc *= std::pow(lambda, min_power);
  } else {
    for (int k = 0; k < -min_power; ++k) acc /= lambda;
  }
  return acc;
}

LambdaSeries LambdaSeries::truncated(int new_max_power) const {
  int len = new_max_power - min_power + 1;
  if (len <= 0) return LambdaSeries(min_power, {});
  std::vector<cplx> out(c.begin(), c.begin() + std::min<size_t>(c.size(), len));
  return LambdaSeries(min_power, std::move(out));
}

LambdaSeries LambdaSeries::shifted(int k) const { return LambdaSeries(min_power + k, c); }

bool LambdaSeries::real_coefficients() const {
  return std::all_of(c.begin(), c.end(), [](const cplx& z) { return z.imag() == 0.0; });
}

LambdaSeries LambdaSeries::conj_coefficients() const {
  std::vector<cplx> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) out[i] = std::conj(c[i]);
  return LambdaSeries(min_power, std::move(out));
}

LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  int min_p = std::min(a.min_power, b.min_power);
  int max_p = std::min(a.max_power(), b.max_power());
  // Addition is exact below the shorter window's end.
  std::vector<cplx> out(static_cast<size_t>(max_p - min_p + 1), 0.0);
  for (int p = min_p; p <= max_p; ++p) out[p - min_p] = a.coeff(p) + b.coeff(p);
  return LambdaSeries(min_p, std::move(out));
}

LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b) {
  return a + (cplx(-1.0) * b);
}

LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) {
  if (a.empty() || b.empty()) return LambdaSeries{};
  int min_p = a.min_power + b.min_power;
  int max_p = std::min(a.max_power() + b.min_power, b.max_power() + a.min_power);
  std::vector<cplx> out(static_cast<size_t>(max_p - min_p + 1), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == cplx(0.0)) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      size_t k = i + j;
      if (k >= out.size()) break;
      out[k] += a.c[i] * b.c[j];
    }
  }
  return LambdaSeries(min_p, std::move(out));
}

LambdaSeries operator*(cplx s, const LambdaSeries& a) {
  std::vector<cplx> out = a.c;
  for (auto& v : out) v *= s;
  return LambdaSeries(a.min_power, std::move(out));
}

LambdaSeries inverse(const LambdaSeries& a, int order) {
  if (a.empty() || a.c[0] == cplx(0.0))
    throw std::domain_error("inverse: series has vanishing leading coefficient");
  std::vector<cplx> out(static_cast<size_t>(order) + 1, 0.0);
  out[0] = 1.0 / a.c[0];
  for (int n = 1; n <= order; ++n) {
    cplx s = 0.0;
    for (int k = 1; k <= n; ++k) {
      cplx ak = (k < static_cast<int>(a.c.size())) ? a.c[k] : cplx(0.0);
      s += ak * out[n - k];
    }
    out[n] = -s / a.c[0];
  }
  return LambdaSeries(-a.min_power, std::move(out));
}

}  // namespace whitham
