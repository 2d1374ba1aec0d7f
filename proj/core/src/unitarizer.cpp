#include "whitham/unitarizer.hpp"

#include <cmath>
#include <stdexcept>

namespace whitham {

namespace {

double unitarity_defect(const Mat2& m, double r) {
  Mat2 d = unitarizer_matrix(r);
  Mat2 di = Mat2::Zero();
  di(0, 0) = 1.0 / d(0, 0);
  di(1, 1) = 1.0 / d(1, 1);
  Mat2 u = d * m * di;
  return mat_norm(Mat2(u.adjoint() * u - Mat2::Identity()));
}

}  // namespace

double unitarizer_r(const MonodromyGenerators& gen, double tol,
                    double* residual_out) {
  int best = -1;
  double best_score = 0.0;
  for (int k = 0; k < 4; ++k) {
    double b = std::abs(gen.M[k](0, 1));
    double c = std::abs(gen.M[k](1, 0));
    double score = std::min(b, c);
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }

  double scale = 0.0;
  for (int k = 0; k < 4; ++k) scale = std::max(scale, mat_norm(gen.M[k]));

  double r = 1.0;
  if (best >= 0 && best_score > 1e-12 * scale) {
    cplx b = gen.M[best](0, 1);
    cplx c = gen.M[best](1, 0);
    cplx r2 = -c / std::conj(b);
    if (r2.real() <= 0.0)
      throw std::domain_error("monodromy not unitarizable: r^2 <= 0");
    if (std::abs(r2.imag()) > 1e-4 * std::abs(r2) + tol)
      throw std::domain_error("monodromy not unitarizable: r^2 not real");
    r = std::sqrt(r2.real());
  }

  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, unitarity_defect(gen.M[k], r));
  if (residual_out) *residual_out = worst;
  if (worst > 10.0 * tol)
    throw ConvergenceError("generators admit no common diagonal unitarizer", worst);
  return r;
}

UnitarizerLoop diagonal_unitarizer(const std::vector<MonodromyGenerators>& gens,
                                   double tol) {
  UnitarizerLoop loop;
  loop.lambdas.reserve(gens.size());
  loop.r.resize(gens.size());
  for (const auto& g : gens) loop.lambdas.push_back(g.lambda);

  std::vector<double> resid(gens.size(), 0.0);
  for (std::size_t i = 0; i < gens.size(); ++i)
    loop.r[i] = unitarizer_r(gens[i], tol, &resid[i]);
  for (double v : resid) loop.worst_residual = std::max(loop.worst_residual, v);
  return loop;
}

}  // namespace whitham
