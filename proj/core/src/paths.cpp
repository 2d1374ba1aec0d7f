#include "whitham/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace whitham {

PathLeg PathLeg::line(cplx a, cplx b) {
  PathLeg l;
  l.kind = Kind::Line;
  l.a = a;
  l.b = b;
  return l;
}

PathLeg PathLeg::arc(cplx center, double radius, double ang0, double ang1) {
  PathLeg l;
  l.kind = Kind::Arc;
  l.center = center;
  l.radius = radius;
  l.ang0 = ang0;
  l.ang1 = ang1;
  return l;
}

cplx PathLeg::point(double s) const {
  if (kind == Kind::Line) return a + s * (b - a);
  return center + radius * unit_circle(ang0 + s * (ang1 - ang0));
}

cplx PathLeg::velocity(double s) const {
  if (kind == Kind::Line) return b - a;
  const double ang = ang0 + s * (ang1 - ang0);
  return cplx(0.0, 1.0) * (radius * (ang1 - ang0)) * unit_circle(ang);
}

double PathLeg::length() const {
  if (kind == Kind::Line) return std::abs(b - a);
  return radius * std::abs(ang1 - ang0);
}

double PathLeg::distance_to(cplx z) const {
  if (kind == Kind::Line) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * d));
  }
  const cplx w = z - center;
  const double r = std::abs(w);
  if (std::abs(ang1 - ang0) >= 2.0 * pi - 1e-12)
    return std::abs(r - radius);
  // Angle of z relative to the swept range, reduced mod 2 pi.
  double ang = std::atan2(w.imag(), w.real());
  const double span = ang1 - ang0;
  double rel = std::fmod(ang - ang0, 2.0 * pi);
  if (rel < 0) rel += 2.0 * pi;
  if ((span >= 0 && rel <= span) || (span < 0 && rel - 2.0 * pi >= span))
    return std::abs(r - radius);
  const cplx e0 = center + radius * unit_circle(ang0);
  const cplx e1 = center + radius * unit_circle(ang1);
  return std::min(std::abs(z - e0), std::abs(z - e1));
}

cplx Path::start() const {
  if (legs.empty()) throw std::logic_error("empty path");
  return legs.front().point(0.0);
}

cplx Path::end() const {
  if (legs.empty()) throw std::logic_error("empty path");
  return legs.back().point(1.0);
}

double Path::length() const {
  double sum = 0.0;
  for (const PathLeg& l : legs) sum += l.length();
  return sum;
}

double Path::distance_to(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const PathLeg& l : legs) d = std::min(d, l.distance_to(z));
  return d;
}

double lasso_radius(const PoleConfig& poles, int k) {
  double dmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 4; ++j)
    if (j != k) dmin = std::min(dmin, std::abs(poles.z[k] - poles.z[j]));
  return 0.5 * dmin;
}

Path lasso_path(const PoleConfig& poles, int k) {
  const cplx zk = poles.z[k];
  const double r = lasso_radius(poles, k);
  const cplx u = zk / std::abs(zk);
  const cplx entry = zk - r * u;
  const double ang_in = std::atan2(-u.imag(), -u.real());

  Path p;
  p.legs.push_back(PathLeg::line(0.0, entry));
  p.legs.push_back(PathLeg::arc(zk, r, ang_in, ang_in + 2.0 * pi));
  p.legs.push_back(PathLeg::line(entry, 0.0));
  return p;
}

}  // namespace whitham
