#include "whitham/geometry_params.hpp"

#include <cmath>
#include <stdexcept>

namespace whitham {

PoleConfig PoleConfig::from_angle(double theta) {
  if (!(theta > 0.0 && theta < 0.25))
    throw std::domain_error("pole angle must lie in (0, 1/4)");
  PoleConfig pc;
  pc.theta = theta;
  pc.z[0] = unit_circle(2.0 * pi * theta);
  pc.z[1] = std::conj(pc.z[0]);
  pc.z[2] = -pc.z[0];
  pc.z[3] = -pc.z[1];
  return pc;
}

double gamma_of_angle(double theta) {
  const double t = std::tan(2.0 * pi * theta);
  return -1.0 / (t * t);
}

PoleConfig pole_config_from_gamma(double gamma) {
  if (!(gamma <= -1.0))
    throw std::domain_error("gamma must be <= -1");
  const double theta = std::atan2(1.0, std::sqrt(-gamma)) / (2.0 * pi);
  return PoleConfig::from_angle(theta);
}

double GeometricParams::nu(int k) const {
  switch (k) {
    case 0: return nu0();
    case 1: return nu1();
    case 2: return -nu0();
    case 3: return -nu1();
    default: throw std::out_of_range("pole index");
  }
}

void GeometricParams::validate() const {
  if (!(gamma <= -1.0))
    throw std::domain_error("gamma must be <= -1");
  if (!(alpha > 0.0 && alpha <= pi))
    throw std::domain_error("alpha must lie in (0, pi]");
  if (!std::isfinite(H))
    throw std::domain_error("H must be finite");
}

}  // namespace whitham
