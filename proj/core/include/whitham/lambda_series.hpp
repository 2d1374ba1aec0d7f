#pragma once

#include <vector>

#include "whitham/lambda_poly.hpp"
#include "whitham/numeric.hpp"

namespace whitham {

// Truncated Laurent series in lambda. Coefficients run from `min_power`
// upward; the series is only trusted through max_power(). Arithmetic tracks
// that contract: a product is valid through the shorter of the two
// contributing windows, so truncation loss is explicit rather than silent.
struct LambdaSeries {
  int min_power = 0;
  std::vector<cplx> c;

  LambdaSeries() = default;
  LambdaSeries(int min_p, std::vector<cplx> coeffs) : min_power(min_p), c(std::move(coeffs)) {}

  static LambdaSeries from_poly(const LambdaPoly& p, int order);
  static LambdaSeries constant(cplx v, int order);

  int max_power() const { return min_power + static_cast<int>(c.size()) - 1; }
  bool empty() const { return c.empty(); }

  cplx coeff(int power) const;
  cplx eval(cplx lambda) const;

  LambdaSeries truncated(int new_max_power) const;
  LambdaSeries shifted(int k) const;  // multiply by lambda^k
  bool real_coefficients() const;

  // Conjugate coefficients; represents lambda |-> conj(f(conj lambda)).
  LambdaSeries conj_coefficients() const;
};

LambdaSeries operator+(const LambdaSeries& a, const LambdaSeries& b);
LambdaSeries operator-(const LambdaSeries& a, const LambdaSeries& b);
LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b);
LambdaSeries operator*(cplx s, const LambdaSeries& a);

// Reciprocal of a series with nonzero leading coefficient, valid through
// `order` powers above its minimum. Throws domain_error if the leading
// coefficient vanishes.
LambdaSeries inverse(const LambdaSeries& a, int order);

}  // namespace whitham
