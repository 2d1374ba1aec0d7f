#pragma once

#include <array>
#include <vector>

#include "whitham/accessory.hpp"
#include "whitham/circle.hpp"
#include "whitham/geometry_params.hpp"
#include "whitham/monodromy.hpp"
#include "whitham/residues.hpp"

namespace whitham {

// Which geometric parameter rides the flow parameter t. The free scalar u
// is the mean curvature H in both modes.
struct FlowMode {
  enum class Kind { GenusOpening, FamilyTracing };
  Kind kind = Kind::GenusOpening;
  double frozen = -1.0;  // gamma in GenusOpening, alpha in FamilyTracing

  GeometricParams geometry(double t, double u) const;
};

struct FlowState {
  double t = 0.0;
  double u = 0.0;
  AccessoryParams A;
  FlowMode mode;
  double residual_norm = 0.0;

  GeometricParams geometry() const { return mode.geometry(t, u); }
};

struct ProblemOptions {
  int S = 20;                    // unit-circle samples for the trace condition
  double tol_integrator = 1e-12;
  double jet_h = 1e-4;           // sym-point derivative step
};

// Stacked closing conditions at one state.
struct ClosingResiduals {
  std::vector<double> c_i;      // Im t_jk, sample-major, 6 S entries
  std::array<double, 8> c_e{};  // re/im of c_E and c_E' at both sym points
  std::vector<cplx> c_a;        // accessory constraint coefficients
  int re_trace_violations = 0;  // samples with Re t_jk outside (-1, 1)
  double worst_re_trace = 0.0;

  double c_i_inf() const;
  double c_e_inf() const;
  double c_a_inf() const;
};

// Difference of the eigenline cross ratio [l_0, l_1, l_2, l_3](lambda) and
// the pole cross ratio gamma.
cplx extrinsic_mismatch(const ResidueSet& res, double gamma, cplx lambda);

// re/im of (c_E, c_E') at sym point 0 then sym point 1.
std::array<double, 8> extrinsic_residual(const ResidueSet& res,
                                         const GeometricParams& geo,
                                         double jet_h);

// Im t_jk at the S equidistant circle samples plus the Re t_jk interval
// monitor. Fills the c_i / monitor fields of `out`.
void intrinsic_residual(const ResidueSet& res, const PoleConfig& poles,
                        const CircleSampling& sampling, double tol,
                        ClosingResiduals& out);

ClosingResiduals closing_residuals(const FlowState& state,
                                   const ProblemOptions& opt);

// Flat residual vector: C_I scaled by 1/sqrt(S), then the 8 extrinsic
// entries, then C_A split into (re, im) pairs.
std::vector<double> residual_F(const FlowState& state,
                               const ProblemOptions& opt);

int residual_length(const AccessoryShape& shape, const ProblemOptions& opt);

}  // namespace whitham
