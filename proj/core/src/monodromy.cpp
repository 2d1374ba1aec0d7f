#include "whitham/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "whitham/ode.hpp"
#include "whitham/parallel.hpp"

namespace whitham {

Mat2 integrate_frame(const std::function<Mat2(cplx)>& xi, const Path& path,
                     double tol) {
  OdeState y{Mat2::Identity()};
  OdeOptions opt;
  opt.tol = tol;
  for (const PathLeg& leg : path.legs) {
    auto rhs = [&xi, &leg](double s, const OdeState& st, OdeState& out) {
      const Mat2 m = xi(leg.point(s)) * leg.velocity(s);
      out[0] = st[0] * m;
    };
    integrate_ode(rhs, y, 0.0, 1.0, opt);
  }
  return y[0];
}

Mat2 integrate_frame(const ResidueSet& res, const PoleConfig& poles,
                     const Path& path, cplx lambda, double tol) {
  const PotentialAtLambda pot(res, poles, lambda);
  return integrate_frame([&pot](cplx z) { return pot.eval(z); }, path, tol);
}

MonodromyGenerators generators(const ResidueSet& res, const PoleConfig& poles,
                               cplx lambda, double tol) {
  MonodromyGenerators gen;
  gen.lambda = lambda;
  const PotentialAtLambda pot(res, poles, lambda);
  auto xi = [&pot](cplx z) { return pot.eval(z); };
  for (int k = 0; k < 4; ++k)
    gen.M[k] = integrate_frame(xi, lasso_path(poles, k), tol);
  return gen;
}

std::array<int, 4> pole_order_by_argument(const PoleConfig& poles) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&poles](int a, int b) {
    return std::arg(poles.z[a]) < std::arg(poles.z[b]);
  });
  return order;
}

GeneratorDiagnostics check_generators(const MonodromyGenerators& gen,
                                      const std::array<double, 4>& nu,
                                      const PoleConfig& poles) {
  GeneratorDiagnostics d;
  for (int k = 0; k < 4; ++k) {
    d.det_err = std::max(d.det_err, std::abs(gen.M[k].determinant() - 1.0));
    const cplx tr = gen.M[k].trace();
    d.trace_err =
        std::max(d.trace_err, std::abs(tr - 2.0 * std::cos(2.0 * pi * nu[k])));
  }
  const std::array<int, 4> o = pole_order_by_argument(poles);
  const Mat2 prod = gen.M[o[0]] * gen.M[o[1]] * gen.M[o[2]] * gen.M[o[3]];
  d.product_err = mat_norm(prod - Mat2::Identity());
  return d;
}

TraceData traces_at(const MonodromyGenerators& gen) {
  TraceData td;
  td.lambda = gen.lambda;
  for (size_t i = 0; i < trace_pairs.size(); ++i) {
    const auto [j, k] = trace_pairs[i];
    td.t[i] = 0.5 * (gen.M[j] * gen.M[k]).trace();
  }
  return td;
}

std::vector<TraceData> traces_on_circle(const ResidueSet& res,
                                        const PoleConfig& poles,
                                        const CircleSampling& sampling,
                                        double tol) {
  std::vector<TraceData> out(sampling.count);
  parallel_for(sampling.count, [&](int s) {
    out[s] = traces_at(generators(res, poles, sampling.point(s), tol));
  });
  return out;
}

Jet sym_point_jet(const std::function<cplx(cplx)>& f, cplx lambda_s, double h) {
  const cplx il = cplx(0.0, 1.0) * lambda_s;
  auto dphi = [&](double step) {
    const cplx plus = f(lambda_s * unit_circle(step));
    const cplx minus = f(lambda_s * unit_circle(-step));
    return (plus - minus) / (2.0 * step * il);
  };
  Jet jet;
  jet.value = f(lambda_s);
  const cplx d1 = dphi(h);
  const cplx d2 = dphi(0.5 * h);
  jet.derivative = (4.0 * d2 - d1) / 3.0;
  jet.error = std::abs(d2 - d1) / 3.0;
  return jet;
}

}  // namespace whitham
