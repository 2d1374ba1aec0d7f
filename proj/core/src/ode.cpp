#include "whitham/ode.hpp"

#include <algorithm>
#include <cmath>

namespace whitham {

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
// Difference between the fifth and embedded fourth order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stages {
  OdeState k1, k2, k3, k4, k5, k6, k7, tmp, ynew;

  void resize(size_t n) {
    for (OdeState* s : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &tmp, &ynew})
      s->assign(n, Mat2::Zero());
  }
};

// One Dormand-Prince step from (s, y) with width h. k1 must hold f(s, y).
// Fills stages.ynew with the fifth order result and k7 with f(s+h, ynew).
void dopri_step(const OdeRhs& rhs, double s, const OdeState& y, double h,
                Stages& st) {
  const size_t n = y.size();
  for (size_t i = 0; i < n; ++i) st.tmp[i] = y[i] + h * (a21 * st.k1[i]);
  rhs(s + c2 * h, st.tmp, st.k2);
  for (size_t i = 0; i < n; ++i)
    st.tmp[i] = y[i] + h * (a31 * st.k1[i] + a32 * st.k2[i]);
  rhs(s + c3 * h, st.tmp, st.k3);
  for (size_t i = 0; i < n; ++i)
    st.tmp[i] = y[i] + h * (a41 * st.k1[i] + a42 * st.k2[i] + a43 * st.k3[i]);
  rhs(s + c4 * h, st.tmp, st.k4);
  for (size_t i = 0; i < n; ++i)
    st.tmp[i] = y[i] + h * (a51 * st.k1[i] + a52 * st.k2[i] + a53 * st.k3[i] +
                            a54 * st.k4[i]);
  rhs(s + c5 * h, st.tmp, st.k5);
  for (size_t i = 0; i < n; ++i)
    st.tmp[i] = y[i] + h * (a61 * st.k1[i] + a62 * st.k2[i] + a63 * st.k3[i] +
                            a64 * st.k4[i] + a65 * st.k5[i]);
  rhs(s + h, st.tmp, st.k6);
  for (size_t i = 0; i < n; ++i)
    st.ynew[i] = y[i] + h * (b1 * st.k1[i] + b3 * st.k3[i] + b4 * st.k4[i] +
                             b5 * st.k5[i] + b6 * st.k6[i]);
  rhs(s + h, st.ynew, st.k7);
}

double error_norm(const OdeState& y, const Stages& st, double h, double tol) {
  double err = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    const Mat2 d = h * (e1 * st.k1[i] + e3 * st.k3[i] + e4 * st.k4[i] +
                        e5 * st.k5[i] + e6 * st.k6[i] + e7 * st.k7[i]);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        const double scale =
            tol + tol * std::max(std::abs(y[i](r, c)), std::abs(st.ynew[i](r, c)));
        err = std::max(err, std::abs(d(r, c)) / scale);
      }
  }
  return err;
}

}  // namespace

void integrate_ode(const OdeRhs& rhs, OdeState& y, double s0, double s1,
                   const OdeOptions& opt) {
  if (s0 == s1 || y.empty()) return;
  const double dir = (s1 > s0) ? 1.0 : -1.0;
  const double span = std::abs(s1 - s0);

  Stages st;
  st.resize(y.size());
  double s = s0;
  double h = std::min(opt.h_init, span) * dir;
  rhs(s, y, st.k1);

  for (long step = 0; step < opt.max_steps; ++step) {
    if ((s - s1) * dir >= 0.0) return;
    if (std::abs(h) > std::abs(s1 - s)) h = s1 - s;

    dopri_step(rhs, s, y, h, st);
    const double err = error_norm(y, st, h, opt.tol);

    if (err <= 1.0) {
      s += h;
      y.swap(st.ynew);
      st.k1.swap(st.k7);  // FSAL
      const double grow = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
      h *= std::clamp(grow, 1.0, 5.0);
    } else {
      // k1 still matches the unchanged (s, y).
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (std::abs(h) < opt.h_min)
        throw ConvergenceError("ODE step size underflow", err);
    }
  }
  throw ConvergenceError("ODE step budget exhausted", std::abs(s1 - s));
}

void integrate_ode_fixed(const OdeRhs& rhs, OdeState& y, double s0, double s1,
                         int n_steps) {
  if (n_steps <= 0 || y.empty() || s0 == s1) return;
  Stages st;
  st.resize(y.size());
  const double h = (s1 - s0) / n_steps;
  for (int i = 0; i < n_steps; ++i) {
    const double s = s0 + i * h;
    rhs(s, y, st.k1);
    dopri_step(rhs, s, y, h, st);
    y.swap(st.ynew);
  }
}

}  // namespace whitham
