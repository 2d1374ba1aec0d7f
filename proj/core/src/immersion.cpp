#include "whitham/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "whitham/iwasawa.hpp"
#include "whitham/monodromy.hpp"
#include "whitham/ode.hpp"
#include "whitham/parallel.hpp"
#include "whitham/paths.hpp"
#include "whitham/potential.hpp"
#include "whitham/unitarizer.hpp"

namespace whitham {

void FrameGrid::resize(int nu, int nv) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("FrameGrid: empty grid");
  n_u = nu;
  n_v = nv;
  const std::size_t n = std::size_t(nu) * std::size_t(nv);
  coord.assign(n, cplx(0.0));
  f.assign(n, Mat2::Identity());
  weight.assign(n, 1.0);
  valid.assign(n, 0);
  density.assign(n, 0.0);
}

namespace {

double su_inner(const Mat2& x, const Mat2& y) {
  return 0.5 * x.cwiseProduct(y.conjugate()).sum().real();
}

Mat2 inverse2(const Mat2& m) {
  const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Mat2 inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv / det;
}

}  // namespace

int FrameGrid::finish_geometry() {
  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
  auto ok = [&](int i, int j) -> bool {
    if (periodic_u) i = wrap(i, n_u);
    else if (i < 0 || i >= n_u) return false;
    if (periodic_v) j = wrap(j, n_v);
    else if (j < 0 || j >= n_v) return false;
    return valid[idx(i, j)] != 0;
  };
  auto at = [&](int i, int j) -> const Mat2& {
    if (periodic_u) i = wrap(i, n_u);
    if (periodic_v) j = wrap(j, n_v);
    return f[idx(i, j)];
  };
  auto deriv = [&](int i, int j, int di, int dj, double h, Mat2& out) -> bool {
    const bool p1 = ok(i + di, j + dj);
    const bool m1 = ok(i - di, j - dj);
    if (p1 && m1) {
      out = (at(i + di, j + dj) - at(i - di, j - dj)) / (2.0 * h);
      return true;
    }
    if (p1 && ok(i + 2 * di, j + 2 * dj)) {
      out = (-3.0 * at(i, j) + 4.0 * at(i + di, j + dj) - at(i + 2 * di, j + 2 * dj)) /
            (2.0 * h);
      return true;
    }
    if (m1 && ok(i - 2 * di, j - 2 * dj)) {
      out = (3.0 * at(i, j) - 4.0 * at(i - di, j - dj) + at(i - 2 * di, j - 2 * dj)) /
            (2.0 * h);
      return true;
    }
    if (p1) {
      out = (at(i + di, j + dj) - at(i, j)) / h;
      return true;
    }
    if (m1) {
      out = (at(i, j) - at(i - di, j - dj)) / h;
      return true;
    }
    return false;
  };

  int missing = 0;
  for (int i = 0; i < n_u; ++i) {
    for (int j = 0; j < n_v; ++j) {
      const int n = idx(i, j);
      density[n] = 0.0;
      if (!valid[n]) continue;
      Mat2 fu, fv;
      if (!deriv(i, j, 1, 0, du, fu) || !deriv(i, j, 0, 1, dv, fv)) {
        ++missing;
        continue;
      }
      const double e = su_inner(fu, fu);
      const double g = su_inner(fv, fv);
      const double x = su_inner(fu, fv);
      density[n] = std::sqrt(std::max(0.0, e * g - x * x));
    }
  }
  return missing;
}

double FrameGrid::integral(int stride) const {
  if (stride < 1) throw std::invalid_argument("FrameGrid::integral: bad stride");
  const double cell = du * dv * stride * stride;
  double acc = 0.0;
  for (int i = 0; i < n_u; i += stride)
    for (int j = 0; j < n_v; j += stride) {
      const int n = idx(i, j);
      if (valid[n]) acc += density[n] * weight[n] * cell;
    }
  return acc;
}

double FrameGrid::max_sphere_defect() const {
  double worst = 0.0;
  for (int n = 0; n < n_u * n_v; ++n) {
    if (!valid[n]) continue;
    const Mat2& m = f[n];
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    worst = std::max(worst, mat_norm(Mat2(m.adjoint() * m - Mat2::Identity())));
    worst = std::max(worst, std::abs(det - cplx(1.0)));
  }
  return worst;
}

double ImmersionPatch::refinement_estimate() const {
  const double scale = std::max(std::abs(patch_integral), 1e-300);
  return std::abs(patch_integral - patch_integral_coarse) / scale;
}

namespace {

// Quintic bump: 1 inside 0.35, 0 outside 0.95 in units of the cap radius.
double partition_bump(double x) {
  if (x <= 0.35) return 1.0;
  if (x >= 0.95) return 0.0;
  const double t = (0.95 - x) / 0.6;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

using FrameState = std::vector<Mat2>;

struct LambdaBatch {
  std::vector<cplx> lam;  // circle samples, then sym point 0, sym point 1
  int n_circle = 0;
};

struct ChartPotentials {
  std::vector<PotentialAtLambda> pot;
};

ChartPotentials chart_potentials(const ResidueSet& res, const LambdaBatch& batch,
                                 const std::array<cplx, 4>& pole_positions) {
  ChartPotentials cp;
  cp.pot.reserve(batch.lam.size());
  for (cplx l : batch.lam) {
    std::array<Mat2, 4> a;
    for (int k = 0; k < 4; ++k) a[k] = res.eval(k, l);
    cp.pot.emplace_back(a, pole_positions);
  }
  return cp;
}

void transport_leg(const ChartPotentials& cp, const PathLeg& leg, FrameState& y,
                   double tol) {
  OdeRhs rhs = [&](double s, const OdeState& st, OdeState& out) {
    const cplx z = leg.point(s);
    const cplx v = leg.velocity(s);
    for (std::size_t i = 0; i < st.size(); ++i)
      out[i] = st[i] * (cp.pot[i].eval(z) * v);
  };
  OdeOptions opt;
  opt.tol = tol;
  integrate_ode(rhs, y, 0.0, 1.0, opt);
}

struct NodeResult {
  Mat2 f = Mat2::Identity();
  bool ok = false;
};

NodeResult factor_node(const FrameState& y, const LambdaBatch& batch,
                       const ReconstructionOptions& opt, cplx lam0, cplx lam1) {
  NodeResult r;
  try {
    std::vector<Mat2> circle(y.begin(), y.begin() + batch.n_circle);
    LoopFactorization fac =
        iwasawa_factor(circle, opt.K, opt.extra_blocks, opt.iwasawa_tol);
    const Mat2 f0 = fac.unitary_at(y[batch.n_circle], lam0);
    const Mat2 f1 = fac.unitary_at(y[batch.n_circle + 1], lam1);
    r.f = f0 * inverse2(f1);
    r.ok = true;
  } catch (const std::exception&) {
    r.ok = false;
  }
  return r;
}

struct ImmersionSetup {
  GeometricParams geo;
  PoleConfig poles;
  LambdaBatch batch;
  ChartPotentials pot_z, pot_w;
  FrameState start;  // Phi(0, lambda) = D(lambda)
  double r_cap = 0.0;
  int grading = 2;
  cplx lam0, lam1;
};

double min_pole_separation(const PoleConfig& poles) {
  double sep = 4.0;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      sep = std::min(sep, std::abs(poles.z[j] - poles.z[k]));
  return sep;
}

ImmersionSetup prepare(const FlowState& state, const ResidueSet& res,
                       const ReconstructionOptions& opt) {
  ImmersionSetup s;
  s.geo = state.geometry();
  s.geo.validate();
  s.poles = s.geo.poles();
  s.lam0 = s.geo.sym_point0();
  s.lam1 = s.geo.sym_point1();

  if (opt.fft_samples < 2 * (opt.K + std::max(opt.extra_blocks, 1)))
    throw std::invalid_argument("reconstruction: fft_samples too small for K + extra_blocks");

  CircleSampling circle{opt.fft_samples};
  s.batch.lam = circle.points();
  s.batch.n_circle = opt.fft_samples;
  s.batch.lam.push_back(s.lam0);
  s.batch.lam.push_back(s.lam1);

  std::array<cplx, 4> zp, wp;
  for (int k = 0; k < 4; ++k) {
    zp[k] = s.poles.z[k];
    wp[k] = std::conj(s.poles.z[k]);
  }
  s.pot_z = chart_potentials(res, s.batch, zp);
  s.pot_w = chart_potentials(res, s.batch, wp);

  const int nlam = static_cast<int>(s.batch.lam.size());
  std::vector<double> rvals(nlam, 1.0);
  parallel_for(nlam, [&](int i) {
    MonodromyGenerators gen =
        generators(res, s.poles, s.batch.lam[i], opt.tol_integrator);
    rvals[i] = unitarizer_r(gen, opt.unitarizer_tol);
  });
  s.start.resize(nlam);
  for (int i = 0; i < nlam; ++i) s.start[i] = unitarizer_matrix(rvals[i]);

  s.r_cap = std::min(opt.cap_radius, 0.4 * min_pole_separation(s.poles));
  s.grading = std::max(2, static_cast<int>(std::lround(2.0 * pi / s.geo.alpha)));
  return s;
}

// Weight of the main-chart partition at surface point zs.
double main_weight(const ImmersionSetup& s, cplx zs) {
  double w = 1.0;
  for (int k : {0, 3})
    w -= partition_bump(std::abs(zs - s.poles.z[k]) / s.r_cap);
  return std::max(0.0, w);
}

void build_main_chart(const ImmersionSetup& s, const ReconstructionOptions& opt,
                      bool w_chart, FrameGrid& g, int& failures) {
  const int n_r = opt.grid_r;
  const int n_phi = opt.grid_phi;
  g.resize(n_r, n_phi);
  g.du = 1.0 / n_r;
  g.dv = pi / n_phi;
  g.periodic_u = g.periodic_v = false;

  const ChartPotentials& cp = w_chart ? s.pot_w : s.pot_z;
  const double sign = w_chart ? -1.0 : 1.0;

  std::vector<int> fail(n_phi, 0);
  parallel_for(n_phi, [&](int j) {
    const double phi = sign * (j + 0.5) * g.dv;
    const cplx dir = unit_circle(phi);
    FrameState y = s.start;
    if (w_chart) {
      transport_leg(s.pot_z, PathLeg::line(cplx(0.0), cplx(0.0, 1.0)), y,
                    opt.tol_integrator);
      transport_leg(s.pot_w, PathLeg::line(cplx(0.0, -1.0), cplx(0.0)), y,
                    opt.tol_integrator);
    }
    double prev = 0.0;
    for (int i = 0; i < n_r; ++i) {
      const double r = (i + 0.5) * g.du;
      transport_leg(cp, PathLeg::line(prev * dir, r * dir), y, opt.tol_integrator);
      prev = r;
      const int n = g.idx(i, j);
      const cplx zc = r * dir;
      g.coord[n] = zc;
      const cplx zs = w_chart ? 1.0 / zc : zc;
      g.weight[n] = main_weight(s, zs);
      NodeResult nr = factor_node(y, s.batch, opt, s.lam0, s.lam1);
      if (nr.ok) {
        g.f[n] = nr.f;
        g.valid[n] = 1;
      } else {
        ++fail[j];
      }
    }
  });
  for (int v : fail) failures += v;
}

void build_cap(const ImmersionSetup& s, const ReconstructionOptions& opt,
               int pole_index, FrameGrid& g, int& failures) {
  const int n_s = opt.cap_s;
  const int n_phi = opt.cap_phi;
  g.resize(n_s, n_phi);
  g.du = 1.0 / n_s;
  g.dv = 2.0 * pi / n_phi;
  g.periodic_u = g.periodic_v = false;

  const cplx zk = s.poles.z[pole_index];
  const double R = s.r_cap;
  const int m = s.grading;
  const double entry = std::arg(-zk);

  FrameState stem = s.start;
  transport_leg(s.pot_z, PathLeg::line(cplx(0.0), (1.0 - R) * zk), stem,
                opt.tol_integrator);

  std::vector<int> fail(n_phi, 0);
  parallel_for(n_phi, [&](int j) {
    const double phij = entry + (j + 0.5) * g.dv;
    FrameState y = stem;
    transport_leg(s.pot_z, PathLeg::arc(zk, R, entry, phij), y, opt.tol_integrator);
    const cplx dir = unit_circle(phij);
    double prev = R;
    for (int i = n_s - 1; i >= 0; --i) {
      const double sv = (i + 0.5) * g.du;
      const double rho = R * std::pow(sv, m);
      transport_leg(s.pot_z, PathLeg::line(zk + prev * dir, zk + rho * dir), y,
                    opt.tol_integrator);
      prev = rho;
      const int n = g.idx(i, j);
      g.coord[n] = zk + rho * dir;
      g.weight[n] = partition_bump(rho / R);
      NodeResult nr = factor_node(y, s.batch, opt, s.lam0, s.lam1);
      if (nr.ok) {
        g.f[n] = nr.f;
        g.valid[n] = 1;
      } else {
        ++fail[j];
      }
    }
  });
  for (int v : fail) failures += v;
}

}  // namespace

ImmersionPatch immerse(const FlowState& state, const ReconstructionOptions& opt) {
  if (opt.grid_r < 4 || opt.grid_phi < 4 || opt.cap_s < 3 || opt.cap_phi < 8)
    throw std::invalid_argument("reconstruction: grid too small");

  const GeometricParams geo = state.geometry();
  ResidueSet res = build_residues(state.A, geo.nu0(), geo.nu1());
  ImmersionSetup s = prepare(state, res, opt);

  ImmersionPatch patch;
  patch.symmetry_order = 2 * s.grading;
  patch.failed_points = 0;

  build_main_chart(s, opt, false, patch.chart_z, patch.failed_points);
  build_main_chart(s, opt, true, patch.chart_w, patch.failed_points);
  build_cap(s, opt, patch.cap_pole[0], patch.caps[0], patch.failed_points);
  build_cap(s, opt, patch.cap_pole[1], patch.caps[1], patch.failed_points);

  patch.failed_points += patch.chart_z.finish_geometry();
  patch.failed_points += patch.chart_w.finish_geometry();
  patch.failed_points += patch.caps[0].finish_geometry();
  patch.failed_points += patch.caps[1].finish_geometry();

  auto total = [&](int stride) {
    return patch.chart_z.integral(stride) + patch.chart_w.integral(stride) +
           patch.caps[0].integral(stride) + patch.caps[1].integral(stride);
  };
  patch.patch_integral = total(1);
  patch.patch_integral_coarse = total(2);

  patch.sphere_defect =
      std::max({patch.chart_z.max_sphere_defect(), patch.chart_w.max_sphere_defect(),
                patch.caps[0].max_sphere_defect(), patch.caps[1].max_sphere_defect()});
  return patch;
}

std::vector<Mat2> immerse_points(const FlowState& state,
                                 const std::vector<cplx>& zs,
                                 const ReconstructionOptions& opt) {
  const GeometricParams geo = state.geometry();
  ResidueSet res = build_residues(state.A, geo.nu0(), geo.nu1());
  ImmersionSetup s = prepare(state, res, opt);

  for (cplx z : zs) {
    const PathLeg ray = PathLeg::line(cplx(0.0), z);
    for (int k = 0; k < 4; ++k)
      if (ray.distance_to(s.poles.z[k]) < 1e-3)
        throw std::invalid_argument("immerse_points: ray passes too close to a pole");
  }

  std::vector<Mat2> out(zs.size(), Mat2::Identity());
  std::vector<int> bad(zs.size(), 0);
  parallel_for(static_cast<int>(zs.size()), [&](int i) {
    FrameState y = s.start;
    transport_leg(s.pot_z, PathLeg::line(cplx(0.0), zs[i]), y, opt.tol_integrator);
    NodeResult nr = factor_node(y, s.batch, opt, s.lam0, s.lam1);
    if (!nr.ok) {
      bad[i] = 1;
      return;
    }
    out[i] = nr.f;
  });
  for (std::size_t i = 0; i < bad.size(); ++i)
    if (bad[i])
      throw ConvergenceError("immerse_points: loop factorization failed at a point");
  return out;
}

double sym_point_closure_residual(const FlowState& state,
                                  const ReconstructionOptions& opt) {
  const GeometricParams geo = state.geometry();
  ResidueSet res = build_residues(state.A, geo.nu0(), geo.nu1());
  const PoleConfig poles = geo.poles();
  const int m = std::max(2, static_cast<int>(std::lround(2.0 * pi / geo.alpha)));

  std::vector<std::array<int, 2>> words = {{0, 1}, {0, 3}, {2, 1}, {2, 3}};
  if (m == 2) {
    words.push_back({0, 2});
    words.push_back({1, 3});
  }

  double worst = 0.0;
  for (cplx lam : {geo.sym_point0(), geo.sym_point1()}) {
    MonodromyGenerators gen = generators(res, poles, lam, opt.tol_integrator);
    const double r = unitarizer_r(gen, opt.unitarizer_tol);
    const Mat2 d = unitarizer_matrix(r);
    Mat2 di = Mat2::Zero();
    di(0, 0) = 1.0 / d(0, 0);
    di(1, 1) = 1.0 / d(1, 1);
    for (const auto& w : words) {
      const Mat2 word = d * gen.M[w[0]] * gen.M[w[1]] * di;
      worst = std::max(worst, dist_to_pm_identity(word));
    }
  }
  return worst;
}

}  // namespace whitham
