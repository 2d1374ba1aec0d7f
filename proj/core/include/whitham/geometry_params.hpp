#pragma once

#include <array>

#include "whitham/numeric.hpp"

namespace whitham {

// Pole positions z_0 = e^{2 pi i theta}, z_1 = conj(z_0), z_2 = -z_0,
// z_3 = -z_1; the set is closed under z -> -z and z -> conj(z).
struct PoleConfig {
  double theta = 0.0;
  std::array<cplx, 4> z{};

  static PoleConfig from_angle(double theta);
};

// Cross ratio [z_0, -z_1, -z_0, z_1] of the pole configuration; equals
// -cot^2(2 pi theta), real and <= -1 for theta in (0, 1/8].
double gamma_of_angle(double theta);

// Inverse of gamma_of_angle: theta = arccot(sqrt(-gamma)) / (2 pi).
// Requires gamma <= -1.
PoleConfig pole_config_from_gamma(double gamma);

// The three scalar parameters steered by the flow. alpha in (0, pi] is the
// cone angle at the first pole pair, gamma <= -1 the conformal type of the
// pole configuration, H the mean curvature.
struct GeometricParams {
  double gamma = -1.0;
  double alpha = pi;
  double H = 0.0;

  double nu0() const { return alpha / (4.0 * pi); }
  double nu1() const { return 0.5 - nu0(); }
  // Exponent attached to pole k (signs follow the order-2 symmetry).
  double nu(int k) const;

  // Sym point angle: H = cot(theta_s) with theta_s in (0, pi).
  double theta_s() const { return std::atan2(1.0, H); }
  cplx sym_point0() const { return unit_circle(theta_s()); }
  cplx sym_point1() const { return unit_circle(-theta_s()); }

  PoleConfig poles() const { return pole_config_from_gamma(gamma); }

  void validate() const;
};

// alpha = 2 pi / (g + 1) closes the surface at genus g.
inline double closing_alpha(int genus) { return 2.0 * pi / (genus + 1); }

}  // namespace whitham
