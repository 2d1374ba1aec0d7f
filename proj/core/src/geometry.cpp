#include "whitham/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitham {

GeometryReport geometry_report(const ImmersionPatch& patch,
                               const GeometricParams& geo) {
  GeometryReport rep;
  rep.H = geo.H;
  rep.area = patch.area();
  rep.willmore = (geo.H * geo.H + 1.0) * rep.area;
  rep.refinement = patch.refinement_estimate();
  rep.sphere_defect = patch.sphere_defect;
  rep.failed_points = patch.failed_points;

  if (rep.failed_points > 0)
    rep.warnings.push_back("quadrature holes: " + std::to_string(rep.failed_points) +
                           " grid points failed to factor");
  if (rep.refinement > 0.01)
    rep.warnings.push_back("under-resolved grid: refinement estimate above 1%");
  if (rep.sphere_defect > 1e-6)
    rep.warnings.push_back("immersion leaves the unit sphere beyond 1e-6");
  return rep;
}

std::vector<FamilyEvent> family_events(const std::vector<double>& theta,
                                       const std::vector<GeometryReport>& reports) {
  if (theta.size() != reports.size())
    throw std::invalid_argument("family_events: size mismatch");
  const int n = static_cast<int>(theta.size());
  std::vector<FamilyEvent> events;
  if (n < 3) return events;

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return theta[a] > theta[b]; });

  auto w_of = [&](int r) { return reports[order[r]].willmore; };
  auto h_of = [&](int r) { return reports[order[r]].H; };
  auto th_of = [&](int r) { return theta[order[r]]; };

  const double w_target = 8.0 * pi;
  for (int r = 0; r + 1 < n; ++r) {
    const double a = w_of(r) - w_target;
    const double b = w_of(r + 1) - w_target;
    if (a == 0.0 && r > 0) continue;  // counted by the previous interval
    if (a * b <= 0.0 && (a != 0.0 || b != 0.0)) {
      const double frac = (a == b) ? 0.0 : a / (a - b);
      FamilyEvent ev;
      ev.kind = "willmore_8pi";
      ev.theta = th_of(r) + frac * (th_of(r + 1) - th_of(r));
      ev.value = w_target;
      events.push_back(ev);
    }
  }
  for (int r = 1; r + 1 < n; ++r) {
    if (h_of(r) > h_of(r - 1) && h_of(r) > h_of(r + 1))
      events.push_back({"max_H", th_of(r), h_of(r)});
    if (w_of(r) > w_of(r - 1) && w_of(r) > w_of(r + 1))
      events.push_back({"max_W", th_of(r), w_of(r)});
  }

  std::sort(events.begin(), events.end(),
            [](const FamilyEvent& a, const FamilyEvent& b) { return a.theta > b.theta; });
  return events;
}

Eigen::Vector4d su2_to_r4(const Mat2& m) {
  return Eigen::Vector4d(m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(),
                         m(0, 1).imag());
}

Eigen::Matrix4d fit_ambient_isometry(const std::vector<Eigen::Vector4d>& a,
                                     const std::vector<Eigen::Vector4d>& b) {
  if (a.size() != b.size() || a.size() < 4)
    throw std::invalid_argument("fit_ambient_isometry: need matched points, >= 4");
  Eigen::Matrix4d corr = Eigen::Matrix4d::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) corr += b[i] * a[i].transpose();
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(corr,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix4d u = svd.matrixU();
  Eigen::Matrix4d v = svd.matrixV();
  Eigen::Vector4d s = Eigen::Vector4d::Ones();
  s(3) = ((u * v.transpose()).determinant() < 0.0) ? -1.0 : 1.0;
  return u * s.asDiagonal() * v.transpose();
}

}  // namespace whitham
