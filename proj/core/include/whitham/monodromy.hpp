#pragma once

#include <array>
#include <functional>
#include <vector>

#include "whitham/circle.hpp"
#include "whitham/paths.hpp"
#include "whitham/potential.hpp"
#include "whitham/residues.hpp"

namespace whitham {

// Frame of the right system dPhi = Phi xi dz along a path, Phi(start) = id.
Mat2 integrate_frame(const std::function<Mat2(cplx)>& xi, const Path& path,
                     double tol);
Mat2 integrate_frame(const ResidueSet& res, const PoleConfig& poles,
                     const Path& path, cplx lambda, double tol);

struct MonodromyGenerators {
  cplx lambda;
  std::array<Mat2, 4> M;
};

struct GeneratorDiagnostics {
  double det_err = 0.0;      // max_k |det M_k - 1|
  double trace_err = 0.0;    // max_k |tr M_k - 2 cos(2 pi nu_k)|
  double product_err = 0.0;  // |ordered product - id|
};

// Monodromy along the four lassos at one loop parameter.
MonodromyGenerators generators(const ResidueSet& res, const PoleConfig& poles,
                               cplx lambda, double tol);

// Pole indices sorted by increasing argument; the product of generators in
// this order is the contractible composite loop.
std::array<int, 4> pole_order_by_argument(const PoleConfig& poles);

GeneratorDiagnostics check_generators(const MonodromyGenerators& gen,
                                      const std::array<double, 4>& nu,
                                      const PoleConfig& poles);

// Pair index convention for t_jk = tr(M_j M_k) / 2.
inline constexpr std::array<std::array<int, 2>, 6> trace_pairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct TraceData {
  cplx lambda;
  std::array<cplx, 6> t;
};

TraceData traces_at(const MonodromyGenerators& gen);

// Traces at the equidistant unit-circle samples; parallel over samples.
std::vector<TraceData> traces_on_circle(const ResidueSet& res,
                                        const PoleConfig& poles,
                                        const CircleSampling& sampling,
                                        double tol);

// Value and first lambda-derivative of f at a unit-circle point, by central
// differences in the circle direction, Richardson-extrapolated from steps
// h and h/2. `error` estimates the remaining derivative error.
struct Jet {
  cplx value;
  cplx derivative;
  double error = 0.0;
};

Jet sym_point_jet(const std::function<cplx(cplx)>& f, cplx lambda_s, double h);

}  // namespace whitham
