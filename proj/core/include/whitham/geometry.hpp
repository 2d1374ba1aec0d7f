#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "whitham/geometry_params.hpp"
#include "whitham/immersion.hpp"

namespace whitham {

struct GeometryReport {
  double H = 0.0;
  double area = 0.0;
  double willmore = 0.0;      // (H^2 + 1) * area
  double refinement = 0.0;    // relative quadrature uncertainty estimate
  double sphere_defect = 0.0;
  int failed_points = 0;
  std::vector<std::string> warnings;
};

GeometryReport geometry_report(const ImmersionPatch& patch,
                               const GeometricParams& geo);

// Events along a one-parameter family of reports sampled at theta values:
// crossings of willmore energy through 8 pi (theta linearly interpolated)
// and interior discrete maxima of H and of the willmore energy. Events are
// ordered by decreasing theta.
struct FamilyEvent {
  std::string kind;  // "willmore_8pi", "max_H", "max_W"
  double theta = 0.0;
  double value = 0.0;
};

std::vector<FamilyEvent> family_events(const std::vector<double>& theta,
                                       const std::vector<GeometryReport>& reports);

// SU(2) as the unit sphere in R^4: [[a, b], [-conj b, conj a]] maps to
// (Re a, Im a, Re b, Im b).
Eigen::Vector4d su2_to_r4(const Mat2& m);

// Least-squares rotation: the SO(4) matrix R minimizing sum |R a_i - b_i|^2.
Eigen::Matrix4d fit_ambient_isometry(const std::vector<Eigen::Vector4d>& a,
                                     const std::vector<Eigen::Vector4d>& b);

}  // namespace whitham
