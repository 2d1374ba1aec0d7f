#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "whitham/closing.hpp"
#include "whitham/geometry_params.hpp"
#include "whitham/numeric.hpp"

namespace whitham {

struct ReconstructionOptions {
  int K = 16;                 // truncation degree of the positive factor
  int fft_samples = 128;      // unit-circle samples carried through transport
  int extra_blocks = 32;      // Toeplitz blocks beyond K
  int grid_r = 64;            // radial nodes of each main chart
  int grid_phi = 64;          // angular nodes across the half domain
  int cap_s = 12;             // graded radial nodes of each pole cap
  int cap_phi = 48;           // angular nodes of each pole cap
  double cap_radius = 0.05;   // clipped to 0.4x the min pole separation
  double tol_integrator = 1e-12;
  double unitarizer_tol = 1e-6;
  double iwasawa_tol = 1e-6;
};

// Rectangular grid of immersion values in chart coordinates (u, v), with
// midpoint cell weights and a finite-difference area density. The geometry
// pipeline only sees the grid structure, so synthetic parametrizations can
// reuse it.
struct FrameGrid {
  int n_u = 0, n_v = 0;
  double du = 0.0, dv = 0.0;
  bool periodic_u = false, periodic_v = false;
  std::vector<cplx> coord;       // chart coordinate per node, diagnostics
  std::vector<Mat2> f;           // immersion into SU(2)
  std::vector<double> weight;    // partition-of-unity weight per node
  std::vector<std::uint8_t> valid;
  std::vector<double> density;   // sqrt(det I) per node in (u, v) coords

  int idx(int i, int j) const { return i * n_v + j; }
  void resize(int nu, int nv);

  // Fills density from f by second-order finite differences; stencils fall
  // back to one-sided next to boundaries and invalid nodes. Returns the
  // number of nodes left without a usable stencil.
  int finish_geometry();

  // Midpoint-rule integral of density * weight. stride > 1 subsamples for
  // a refinement estimate.
  double integral(int stride = 1) const;

  double max_sphere_defect() const;
};

struct ImmersionPatch {
  FrameGrid chart_z;                 // |z| < 1 half, angles in [0, pi)
  FrameGrid chart_w;                 // |z| > 1 half in w = 1/z coordinates
  std::array<FrameGrid, 2> caps;     // graded disks around the in-half poles
  std::array<int, 2> cap_pole{{0, 3}};
  int symmetry_order = 2;
  double patch_integral = 0.0;        // area of the fundamental piece
  double patch_integral_coarse = 0.0; // stride-2 value of the same sum
  double sphere_defect = 0.0;         // max of ||f^*f - I|| and |det f - 1|
  int failed_points = 0;

  double area() const { return symmetry_order * patch_integral; }
  double refinement_estimate() const;
};

// Builds the immersion f = F(lambda_0) F(lambda_1)^-1 over a fundamental
// piece of the domain: the solution of dPhi = Phi xi with Phi(0) = D is
// carried along rays at the circle samples plus the two sym points, each
// node is loop-factored, and the two-chart grids plus pole caps are
// assembled with a partition of unity.
ImmersionPatch immerse(const FlowState& state, const ReconstructionOptions& opt);

// Immersion values at explicit points, each reached along the straight ray
// from 0 (which must stay clear of the poles).
std::vector<Mat2> immerse_points(const FlowState& state,
                                 const std::vector<cplx>& zs,
                                 const ReconstructionOptions& opt);

// Worst distance to +-identity over both sym points of the unitarized
// two-pole monodromy words that close up when the surface exists.
double sym_point_closure_residual(const FlowState& state,
                                  const ReconstructionOptions& opt);

}  // namespace whitham
