#pragma once

#include <vector>

#include "whitham/numeric.hpp"

namespace whitham {

// Equispaced samples mu_k = exp(2 pi i k / count) on the unit circle.
struct CircleSampling {
  int count = 0;

  CircleSampling() = default;
  explicit CircleSampling(int n) : count(n) {
    if (n < 1) throw std::invalid_argument("CircleSampling: count must be >= 1");
  }

  cplx point(int k) const { return unit_circle(2.0 * pi * k / count); }

  std::vector<cplx> points() const {
    std::vector<cplx> out(count);
    for (int k = 0; k < count; ++k) out[k] = point(k);
    return out;
  }
};

}  // namespace whitham
