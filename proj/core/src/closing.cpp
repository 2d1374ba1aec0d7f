#include "whitham/closing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whitham/projective.hpp"

namespace whitham {

GeometricParams FlowMode::geometry(double t, double u) const {
  GeometricParams geo;
  if (kind == Kind::GenusOpening) {
    geo.gamma = frozen;
    geo.alpha = t;
  } else {
    geo.gamma = t;
    geo.alpha = frozen;
  }
  geo.H = u;
  return geo;
}

double ClosingResiduals::c_i_inf() const {
  double m = 0.0;
  for (double v : c_i) m = std::max(m, std::abs(v));
  return m;
}

double ClosingResiduals::c_e_inf() const {
  double m = 0.0;
  for (double v : c_e) m = std::max(m, std::abs(v));
  return m;
}

double ClosingResiduals::c_a_inf() const {
  double m = 0.0;
  for (const cplx& v : c_a) m = std::max(m, std::abs(v));
  return m;
}

cplx extrinsic_mismatch(const ResidueSet& res, double gamma, cplx lambda) {
  const ProjectivePoint l0 = res.positive_eigenline(0, lambda);
  const ProjectivePoint l1 = res.positive_eigenline(1, lambda);
  const ProjectivePoint l2 = res.positive_eigenline(2, lambda);
  const ProjectivePoint l3 = res.positive_eigenline(3, lambda);
  return cross_ratio(l0, l1, l2, l3) - gamma;
}

std::array<double, 8> extrinsic_residual(const ResidueSet& res,
                                         const GeometricParams& geo,
                                         double jet_h) {
  auto f = [&](cplx lambda) { return extrinsic_mismatch(res, geo.gamma, lambda); };
  std::array<double, 8> out{};
  const std::array<cplx, 2> sym{geo.sym_point0(), geo.sym_point1()};
  for (int s = 0; s < 2; ++s) {
    const Jet jet = sym_point_jet(f, sym[s], jet_h);
    out[4 * s + 0] = jet.value.real();
    out[4 * s + 1] = jet.value.imag();
    out[4 * s + 2] = jet.derivative.real();
    out[4 * s + 3] = jet.derivative.imag();
  }
  return out;
}

void intrinsic_residual(const ResidueSet& res, const PoleConfig& poles,
                        const CircleSampling& sampling, double tol,
                        ClosingResiduals& out) {
  const std::vector<TraceData> traces =
      traces_on_circle(res, poles, sampling, tol);
  out.c_i.assign(6 * sampling.count, 0.0);
  out.re_trace_violations = 0;
  out.worst_re_trace = 0.0;
  for (int s = 0; s < sampling.count; ++s) {
    for (int i = 0; i < 6; ++i) {
      const cplx t = traces[s].t[i];
      out.c_i[6 * s + i] = t.imag();
      out.worst_re_trace = std::max(out.worst_re_trace, std::abs(t.real()));
      if (t.real() <= -1.0 || t.real() >= 1.0) ++out.re_trace_violations;
    }
  }
}

ClosingResiduals closing_residuals(const FlowState& state,
                                   const ProblemOptions& opt) {
  const GeometricParams geo = state.geometry();
  geo.validate();
  const PoleConfig poles = geo.poles();
  const ResidueSet res(state.A, geo.nu0(), geo.nu1());

  ClosingResiduals out;
  intrinsic_residual(res, poles, CircleSampling{opt.S}, opt.tol_integrator, out);
  out.c_e = extrinsic_residual(res, geo, opt.jet_h);
  out.c_a = accessory_constraint(state.A, nu_array(geo.nu0(), geo.nu1()));
  return out;
}

std::vector<double> residual_F(const FlowState& state,
                               const ProblemOptions& opt) {
  const ClosingResiduals r = closing_residuals(state, opt);
  std::vector<double> F;
  F.reserve(r.c_i.size() + 8 + 2 * r.c_a.size());
  const double wi = 1.0 / std::sqrt(static_cast<double>(opt.S));
  for (double v : r.c_i) F.push_back(wi * v);
  for (double v : r.c_e) F.push_back(v);
  for (const cplx& v : r.c_a) {
    F.push_back(v.real());
    F.push_back(v.imag());
  }
  return F;
}

int residual_length(const AccessoryShape& shape, const ProblemOptions& opt) {
  return 6 * opt.S + 8 + 2 * shape.constraint_count();
}

}  // namespace whitham
