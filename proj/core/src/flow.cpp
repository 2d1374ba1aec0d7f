#include "whitham/flow.hpp"

#include <algorithm>
#include <cmath>

#include "whitham/parallel.hpp"

namespace whitham {

std::vector<double> pack_unknowns(const FlowState& state) {
  std::vector<double> x;
  const std::vector<double> a = state.A.pack();
  x.reserve(1 + a.size());
  x.push_back(state.u);
  x.insert(x.end(), a.begin(), a.end());
  return x;
}

FlowState with_unknowns(const FlowState& proto, double t,
                        const std::vector<double>& x) {
  FlowState s = proto;
  s.t = t;
  s.u = x[0];
  s.A = AccessoryParams::unpack(proto.A.shape,
                                std::vector<double>(x.begin() + 1, x.end()));
  return s;
}

Eigen::VectorXd residual_vector(const FlowState& state,
                                const ProblemOptions& opt) {
  const std::vector<double> F = residual_F(state, opt);
  return Eigen::Map<const Eigen::VectorXd>(F.data(), F.size());
}

Eigen::MatrixXd fd_jacobian(const FlowState& state, const FlowOptions& opt) {
  const std::vector<double> x0 = pack_unknowns(state);
  const int n = static_cast<int>(x0.size());
  const Eigen::VectorXd F0 =
      opt.central_differences ? Eigen::VectorXd()
                              : residual_vector(state, opt.problem);
  const int m = opt.central_differences
                    ? residual_length(state.A.shape, opt.problem)
                    : static_cast<int>(F0.size());

  Eigen::MatrixXd J(m, n);
  parallel_for(n, [&](int i) {
    const double h = opt.fd_step * std::max(1.0, std::abs(x0[i]));
    std::vector<double> xp = x0;
    xp[i] += h;
    const Eigen::VectorXd Fp =
        residual_vector(with_unknowns(state, state.t, xp), opt.problem);
    if (opt.central_differences) {
      std::vector<double> xm = x0;
      xm[i] -= h;
      const Eigen::VectorXd Fm =
          residual_vector(with_unknowns(state, state.t, xm), opt.problem);
      J.col(i) = (Fp - Fm) / (2.0 * h);
    } else {
      J.col(i) = (Fp - F0) / h;
    }
  });
  if (!J.allFinite())
    throw ConvergenceError("non-finite residual while probing the Jacobian");
  return J;
}

TangentSystem tangent_system(const FlowState& state, const FlowOptions& opt) {
  TangentSystem ts;
  ts.A = fd_jacobian(state, opt);

  const std::vector<double> x0 = pack_unknowns(state);
  const double h = opt.fd_step * std::max(1.0, std::abs(state.t));
  if (opt.central_differences) {
    const Eigen::VectorXd Fp =
        residual_vector(with_unknowns(state, state.t + h, x0), opt.problem);
    const Eigen::VectorXd Fm =
        residual_vector(with_unknowns(state, state.t - h, x0), opt.problem);
    ts.B = (Fp - Fm) / (2.0 * h);
  } else {
    const Eigen::VectorXd F0 = residual_vector(state, opt.problem);
    const Eigen::VectorXd Fp =
        residual_vector(with_unknowns(state, state.t + h, x0), opt.problem);
    ts.B = (Fp - F0) / h;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(ts.A,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  ts.xdot = svd.solve(-ts.B);
  const double denom = ts.A.norm() * ts.B.norm();
  ts.orthogonality =
      denom > 0.0 ? (ts.A.transpose() * (ts.A * ts.xdot + ts.B)).norm() / denom
                  : 0.0;
  return ts;
}

CorrectorResult correct_state(FlowState& state, const FlowOptions& opt) {
  CorrectorResult r;
  try {
    Eigen::VectorXd F = residual_vector(state, opt.problem);
    r.residual_norm = F.lpNorm<Eigen::Infinity>();
    for (; r.iterations < opt.max_corrector_iters; ++r.iterations) {
      if (r.residual_norm < opt.corrector_tol) {
        r.converged = true;
        state.residual_norm = r.residual_norm;
        return r;
      }
      const Eigen::MatrixXd J = fd_jacobian(state, opt);
      Eigen::BDCSVD<Eigen::MatrixXd> svd(
          J, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd delta = svd.solve(-F);
      std::vector<double> x = pack_unknowns(state);
      for (size_t i = 0; i < x.size(); ++i) x[i] += delta(i);
      state = with_unknowns(state, state.t, x);
      F = residual_vector(state, opt.problem);
      r.residual_norm = F.lpNorm<Eigen::Infinity>();
    }
    if (r.residual_norm < opt.corrector_tol) {
      r.converged = true;
      state.residual_norm = r.residual_norm;
    }
  } catch (const std::exception&) {
    r.converged = false;
  }
  return r;
}

StepResult flow_step(const FlowState& state, double dt, const FlowOptions& opt) {
  StepResult out;
  out.state = state;
  const TangentSystem ts = tangent_system(state, opt);
  const std::vector<double> x0 = pack_unknowns(state);

  double trial = dt;
  while (std::abs(trial) >= opt.dt_min) {
    std::vector<double> x = x0;
    for (size_t i = 0; i < x.size(); ++i) x[i] += trial * ts.xdot(i);
    FlowState predicted = with_unknowns(state, state.t + trial, x);
    const CorrectorResult cr = correct_state(predicted, opt);
    if (cr.converged) {
      out.state = predicted;
      out.dt_used = trial;
      out.corrector_iters = cr.iterations;
      out.ok = true;
      return out;
    }
    trial *= 0.5;
  }
  return out;
}

namespace {

void detect_genus_events(double alpha_old, double alpha_new,
                         std::vector<std::string>& events) {
  for (int g = 1; g <= 9; ++g) {
    const double target = 2.0 * pi / (g + 1);
    const double a = alpha_old - target, b = alpha_new - target;
    if (a == 0.0) continue;  // started on the threshold, not a crossing
    if (a * b <= 0.0)
      events.push_back("genus_closure:g=" + std::to_string(g));
  }
}

}  // namespace

RunStatus flow_run(FlowCursor& cursor, double t_target, const FlowOptions& opt,
                   const RunCallbacks& callbacks) {
  FlowState& state = cursor.state;
  const double span = std::abs(t_target - state.t);
  if (cursor.dt == 0.0)
    cursor.dt = std::copysign(opt.dt_init, t_target - state.t);

  while (true) {
    const double remaining = t_target - state.t;
    if (std::abs(remaining) <= 1e-14 * std::max(1.0, span))
      return RunStatus::ReachedTarget;
    if (callbacks.should_stop && callbacks.should_stop())
      return RunStatus::Interrupted;

    double dt = std::copysign(std::min(std::abs(cursor.dt), opt.dt_max),
                              remaining);
    const bool clipped = std::abs(dt) > std::abs(remaining);
    if (clipped) dt = remaining;

    const double alpha_old = state.geometry().alpha;
    const StepResult sr = flow_step(state, dt, opt);
    if (!sr.ok) return RunStatus::SteppingFailed;
    state = sr.state;

    StepRecord rec;
    const GeometricParams geo = state.geometry();
    rec.t = state.t;
    rec.u = state.u;
    rec.alpha = geo.alpha;
    rec.gamma = geo.gamma;
    rec.H = geo.H;
    rec.dt = sr.dt_used;
    rec.corrector_iters = sr.corrector_iters;
    const ClosingResiduals res = closing_residuals(state, opt.problem);
    rec.ci_inf = res.c_i_inf();
    rec.ce_inf = res.c_e_inf();
    rec.ca_inf = res.c_a_inf();
    rec.re_trace_violations = res.re_trace_violations;
    if (state.mode.kind == FlowMode::Kind::GenusOpening)
      detect_genus_events(alpha_old, geo.alpha, rec.events);

    if (sr.dt_used == dt && !clipped) {
      if (++cursor.accept_streak >= 2) {
        cursor.dt = std::copysign(
            std::min(std::abs(dt) * opt.dt_growth, opt.dt_max), dt);
        cursor.accept_streak = 0;
      } else {
        cursor.dt = dt;
      }
    } else if (sr.dt_used == dt) {
      cursor.accept_streak = 0;  // clipped landing step, keep width
    } else {
      cursor.dt = sr.dt_used;
      cursor.accept_streak = 0;
    }

    if (callbacks.on_step) callbacks.on_step(state, rec);
  }
}

FlowState seed_solve(const FlowMode& mode, double t,
                     const AccessoryParams& guess, double u0,
                     const SeedOptions& opt) {
  FlowState state;
  state.t = t;
  state.u = u0;
  state.A = guess;
  state.mode = mode;

  Eigen::VectorXd F = residual_vector(state, opt.flow.problem);
  double norm_inf = F.lpNorm<Eigen::Infinity>();
  double best = norm_inf;
  double mu = 1e-3;

  for (int iter = 0; iter < opt.max_iters; ++iter) {
    if (norm_inf < opt.tol) {
      state.residual_norm = norm_inf;
      return state;
    }
    const Eigen::MatrixXd J = fd_jacobian(state, opt.flow);
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * F;
    const double scale = JtJ.diagonal().mean();

    bool improved = false;
    for (int damp = 0; damp < 25; ++damp) {
      Eigen::MatrixXd M = JtJ;
      M.diagonal().array() += mu * std::max(scale, 1e-12);
      const Eigen::VectorXd delta = M.ldlt().solve(-g);
      std::vector<double> x = pack_unknowns(state);
      for (size_t i = 0; i < x.size(); ++i) x[i] += delta(i);
      try {
        FlowState trial = with_unknowns(state, state.t, x);
        const Eigen::VectorXd Ft = residual_vector(trial, opt.flow.problem);
        if (Ft.squaredNorm() < F.squaredNorm()) {
          state = trial;
          F = Ft;
          norm_inf = F.lpNorm<Eigen::Infinity>();
          best = std::min(best, norm_inf);
          mu = std::max(mu * 0.3, 1e-12);
          improved = true;
          break;
        }
      } catch (const std::exception&) {
        // trial state not evaluable; damp harder
      }
      mu *= 8.0;
    }
    if (!improved)
      throw ConvergenceError("seed solve stalled", best);
  }
  if (norm_inf < opt.tol) {
    state.residual_norm = norm_inf;
    return state;
  }
  throw ConvergenceError("seed solve did not reach tolerance", best);
}

}  // namespace whitham
