#pragma once

#include <vector>

#include "whitham/geometry_params.hpp"
#include "whitham/numeric.hpp"

namespace whitham {

// One leg of a piecewise path in the z-plane, parametrized over s in [0,1].
struct PathLeg {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  cplx a, b;            // line endpoints
  cplx center;          // arc center
  double radius = 0.0;  // arc radius
  double ang0 = 0.0, ang1 = 0.0;  // arc angles, ang1 > ang0 is counterclockwise

  static PathLeg line(cplx a, cplx b);
  static PathLeg arc(cplx center, double radius, double ang0, double ang1);

  cplx point(double s) const;
  cplx velocity(double s) const;
  double length() const;
  double distance_to(cplx z) const;
};

struct Path {
  std::vector<PathLeg> legs;

  cplx start() const;
  cplx end() const;
  double length() const;
  double distance_to(cplx z) const;
};

// Half the minimum distance from pole k to the other three poles.
double lasso_radius(const PoleConfig& poles, int k);

// Loop based at z = 0: straight leg toward pole k stopping at lasso_radius,
// one full counterclockwise circle around the pole, straight leg back.
Path lasso_path(const PoleConfig& poles, int k);

}  // namespace whitham
