#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "whitham/closing.hpp"

namespace whitham {

struct FlowOptions {
  ProblemOptions problem;
  double corrector_tol = 1e-8;
  int max_corrector_iters = 12;
  double fd_step = 1e-6;          // scaled by max(1, |coordinate|)
  bool central_differences = false;
  double dt_init = 5e-3;
  double dt_min = 1e-8;
  double dt_max = 2e-2;
  double dt_growth = 1.3;         // applied after two consecutive accepts
};

// Unknown vector of the implicit system: u first, then the accessory pack.
std::vector<double> pack_unknowns(const FlowState& state);
FlowState with_unknowns(const FlowState& proto, double t,
                        const std::vector<double>& x);

Eigen::VectorXd residual_vector(const FlowState& state,
                                const ProblemOptions& opt);

// d residual / d (u, A) and d residual / d t by column-parallel finite
// differences, plus the least-squares tangent xdot minimizing |A xdot + B|.
struct TangentSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::VectorXd xdot;
  double orthogonality = 0.0;  // |A^T (A xdot + B)| / (|A| |B|)
};

Eigen::MatrixXd fd_jacobian(const FlowState& state, const FlowOptions& opt);
TangentSystem tangent_system(const FlowState& state, const FlowOptions& opt);

struct CorrectorResult {
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;
};

// Gauss-Newton on (u, A) at fixed t until |F|_inf < corrector_tol.
CorrectorResult correct_state(FlowState& state, const FlowOptions& opt);

struct StepRecord {
  double t = 0, u = 0, alpha = 0, gamma = 0, H = 0;
  double ci_inf = 0, ce_inf = 0, ca_inf = 0;
  double dt = 0;
  int corrector_iters = 0;
  int re_trace_violations = 0;
  std::vector<std::string> events;
};

struct StepResult {
  FlowState state;
  double dt_used = 0.0;
  int corrector_iters = 0;
  bool ok = false;
};

// One accepted continuation step of signed width at most dt: Euler predictor
// along the least-squares tangent, Gauss-Newton corrector, halving dt on
// corrector failure until |dt| < dt_min.
StepResult flow_step(const FlowState& state, double dt, const FlowOptions& opt);

enum class RunStatus { ReachedTarget, SteppingFailed, Interrupted };

struct FlowCursor {
  FlowState state;
  double dt = 0.0;        // next step width (signed); 0 means dt_init
  int accept_streak = 0;  // consecutive accepts at full width
};

struct RunCallbacks {
  std::function<void(const FlowState&, const StepRecord&)> on_step;
  std::function<bool()> should_stop;  // polled between steps
};

RunStatus flow_run(FlowCursor& cursor, double t_target, const FlowOptions& opt,
                   const RunCallbacks& callbacks = {});

struct SeedOptions {
  FlowOptions flow;
  double tol = 1e-10;
  int max_iters = 60;
};

// Levenberg-damped Gauss-Newton solve of all closing conditions at fixed t,
// starting from (guess, u0). Throws ConvergenceError with the best residual
// if the iteration stalls.
FlowState seed_solve(const FlowMode& mode, double t,
                     const AccessoryParams& guess, double u0,
                     const SeedOptions& opt);

}  // namespace whitham
