#pragma once

#include <vector>

#include "whitham/numeric.hpp"

namespace whitham {

// Polynomial in the loop parameter lambda, coefficients in ascending order.
// An empty coefficient list is the zero polynomial.
struct LambdaPoly {
  std::vector<cplx> c;

  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const;
  cplx eval(cplx lambda) const;
  LambdaPoly derivative() const;

  // True if every coefficient has zero imaginary part (exactly).
  bool real_coefficients() const;

  // Drops trailing coefficients below `eps` in magnitude.
  LambdaPoly trimmed(double eps = 0.0) const;
};

LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly operator*(cplx s, const LambdaPoly& a);

// Monic polynomial with the given non-leading coefficients: c0 + c1 L + ... + L^n.
LambdaPoly monic_from_lower(const std::vector<cplx>& lower);

// All roots of p (with multiplicity), found by Aberth-Ehrlich iteration and
// polished by Newton steps. Throws ConvergenceError if iteration stalls.
std::vector<cplx> all_roots(const LambdaPoly& p);

// Roots with |root| < radius, each polished to |p(root)| < 1e-12 * scale(p).
std::vector<cplx> roots_in_disk(const LambdaPoly& p, double radius);

}  // namespace whitham
