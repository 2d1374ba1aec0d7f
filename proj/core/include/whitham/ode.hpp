#pragma once

#include <functional>
#include <vector>

#include "whitham/numeric.hpp"

namespace whitham {

// Batched matrix ODE y' = f(s, y) with y a stack of 2x2 complex matrices.
// Batching lets one adaptive step control serve many loop-parameter samples
// transported along the same path.
using OdeState = std::vector<Mat2>;
using OdeRhs = std::function<void(double, const OdeState&, OdeState&)>;

struct OdeOptions {
  double tol = 1e-12;   // absolute and relative local error target
  double h_init = 0.1;
  double h_min = 1e-10;
  long max_steps = 2000000;
};

// Dormand-Prince 5(4) with PI-free standard step control and FSAL reuse.
// Integrates y in place from s0 to s1 (s1 > s0 or s1 < s0 both work).
// Throws ConvergenceError on step underflow or step budget exhaustion,
// with best_residual holding the last error estimate.
void integrate_ode(const OdeRhs& rhs, OdeState& y, double s0, double s1,
                   const OdeOptions& opt = {});

// Same fifth-order stages with n equal steps and no error control; exposes
// the raw convergence order of the scheme.
void integrate_ode_fixed(const OdeRhs& rhs, OdeState& y, double s0, double s1,
                         int n_steps);

}  // namespace whitham
