#include <cmath>
#include <complex>

#include "doctest.h"
#include "fixtures.hpp"
#include "test_util.hpp"
#include "whitham/monodromy.hpp"
#include "whitham/ode.hpp"
#include "whitham/paths.hpp"

using namespace whitham;
namespace tu = whitham::testutil;

namespace {

// independent scaling-and-squaring Taylor exponential
Mat2 expm_oracle(const Mat2& a) {
  int s = std::max(0, (int)std::ceil(std::log2(std::max(1.0, mat_norm(a)))) + 3);
  Mat2 x = a / std::pow(2.0, s);
  Mat2 sum = Mat2::Identity(), term = Mat2::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * x / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("zero potential transports the identity") {
  auto xi = [](cplx) { return Mat2::Zero().eval(); };
  Path path;
  path.legs = {PathLeg::line(cplx(0), cplx(1, 1))};
  CHECK(mat_norm(integrate_frame(xi, path, 1e-12) - Mat2::Identity()) < 1e-12);
}

TEST_CASE("constant potential integrates to the matrix exponential") {
  auto g = tu::rng(301);
  for (int rep = 0; rep < 5; ++rep) {
    Mat2 c;
    c << tu::random_cplx(g), tu::random_cplx(g), tu::random_cplx(g),
        tu::random_cplx(g);
    auto xi = [&](cplx) { return c; };
    Path path;
    path.legs = {PathLeg::line(cplx(0), cplx(1))};
    Mat2 got = integrate_frame(xi, path, 1e-12);
    CHECK(mat_norm(got - expm_oracle(c)) < 1e-10);
  }
}

TEST_CASE("fixed step integration converges at fifth order") {
  Mat2 c;
  c << cplx(0.3, 0.8), cplx(-0.5, 0.2), cplx(0.1, -0.7), cplx(-0.3, -0.8);
  Mat2 want = expm_oracle(c);
  OdeRhs rhs = [&](double, const OdeState& y, OdeState& dy) {
    dy[0] = y[0] * c;
  };
  double prev_err = -1.0;
  for (int n : {8, 16, 32, 64}) {
    OdeState y{Mat2::Identity()};
    integrate_ode_fixed(rhs, y, 0.0, 1.0, n);
    double err = mat_norm(y[0] - want);
    if (prev_err > 0) CHECK(err < prev_err / 4.0);
    prev_err = err;
  }
}

TEST_CASE("adaptive tolerance bounds the global error") {
  Mat2 c;
  c << cplx(0, 2.0), cplx(1, 0), cplx(-1, 0.5), cplx(0, -2.0);
  Mat2 want = expm_oracle(c);
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    OdeRhs rhs = [&](double, const OdeState& y, OdeState& dy) {
      dy[0] = y[0] * c;
    };
    OdeState y{Mat2::Identity()};
    integrate_ode(rhs, y, 0.0, 1.0, {tol, 0.1, 1e-10, 2000000});
    CHECK(mat_norm(y[0] - want) < 200.0 * tol);
  }
}

TEST_CASE("contractible loop has trivial monodromy") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(302);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  Path loop;
  loop.legs = {PathLeg::arc(cplx(0.1, 0.0), 0.2, 0.0, 2.0 * pi)};
  Mat2 got = integrate_frame(res, poles, loop, unit_circle(0.9), 1e-11);
  CHECK(mat_norm(got - Mat2::Identity()) < 1e-9);
}

TEST_CASE("single pole monodromy trace equals the local exponent cosine") {
  PoleConfig poles = PoleConfig::from_angle(0.11);
  for (double nu : {0.17, 0.25, 0.31}) {
    Mat2 a;
    a << nu, 0, 0, -nu;
    auto xi = [&](cplx z) { return Mat2((a / (z - poles.z[0])).eval()); };
    Mat2 m = integrate_frame(xi, lasso_path(poles, 0), 1e-11);
    CHECK(std::abs(m.determinant() - cplx(1)) < 1e-9);
    cplx want = 2.0 * std::cos(2.0 * pi * nu);
    CHECK(std::abs(m.trace() - want) < 1e-8);
  }
}

TEST_CASE("generator invariants hold on the symmetric guess chart") {
  // the symmetric starting chart satisfies the eigenvalue constraint exactly
  // at nu = (1/4, 1/4) and its monodromy stays moderate near lambda = +-1
  std::array<double, 4> nu{0.25, 0.25, -0.25, -0.25};
  AccessoryParams A = default_guess(AccessoryShape{}, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  for (double ang : {0.0, pi}) {
    auto gen = generators(res, poles, unit_circle(ang), 1e-11);
    auto diag = check_generators(gen, nu, poles);
    CHECK(diag.det_err < 1e-9);
    CHECK(diag.trace_err < 1e-8);
    CHECK(diag.product_err < 1e-5);
    for (auto& m : gen.M) CHECK(std::abs(m.trace()) < 1e-8);
  }
}

TEST_CASE("generic exponents satisfy the trace law on tame systems") {
  // four constant residues with prescribed eigenvalues and zero sum: the
  // local exponents dictate every lasso trace and the composite loop is
  // trivial because the connection is regular at infinity
  auto g = tu::rng(304);
  std::uniform_real_distribution<double> U(0.05, 0.45), C(0.7, 1.4);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  for (int rep = 0; rep < 3; ++rep) {
    double nu0 = U(g);
    std::array<double, 4> nu{nu0, 0.5 - nu0, -nu0, nu0 - 0.5};
    std::array<Mat2, 4> R;
    for (int k = 0; k < 3; ++k) {
      Mat2 d = Mat2::Zero(), s = Mat2::Zero();
      d(0, 0) = nu[k];
      d(1, 1) = -nu[k];
      double c = C(g);
      s(0, 0) = c;
      s(1, 1) = 1.0 / c;
      Mat2 G = tu::random_su2(g) * s;
      R[k] = G * d * G.inverse();
    }
    R[3] = -(R[0] + R[1] + R[2]);
    cplx mu3 = std::sqrt(-R[3].determinant());
    auto xi = [&](cplx z) {
      Mat2 a = Mat2::Zero();
      for (int k = 0; k < 4; ++k) a += R[k] / (z - poles.z[k]);
      return a;
    };
    std::array<Mat2, 4> M;
    for (int k = 0; k < 4; ++k) {
      M[k] = integrate_frame(xi, lasso_path(poles, k), 1e-12);
      CHECK(std::abs(M[k].determinant() - cplx(1)) < 1e-10);
      cplx want = k < 3 ? cplx(2.0 * std::cos(2.0 * pi * nu[k]))
                        : 2.0 * std::cos(2.0 * pi * mu3);
      CHECK(std::abs(M[k].trace() - want) < 1e-8);
    }
    Mat2 prod = Mat2::Identity();
    for (int k : pole_order_by_argument(poles)) prod = prod * M[k];
    CHECK(mat_norm(prod - Mat2::Identity()) < 1e-8);
  }
}

TEST_CASE("trace sampling has the advertised shape and is deterministic") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(305);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  auto run1 = traces_on_circle(res, poles, CircleSampling(4), 1e-10);
  auto run2 = traces_on_circle(res, poles, CircleSampling(4), 1e-10);
  REQUIRE(run1.size() == 4);
  for (size_t s = 0; s < 4; ++s)
    for (int j = 0; j < 6; ++j) {
      CHECK(run1[s].t[j] == run2[s].t[j]);
      CHECK(finite(run1[s].t[j]));
    }
}

TEST_CASE("pair traces are invariant under basepoint conjugation") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(306);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  auto gen = generators(res, poles, unit_circle(1.1), 1e-11);
  auto before = traces_at(gen);
  Mat2 G = tu::random_invertible(g);
  MonodromyGenerators conj = gen;
  for (auto& m : conj.M) m = G * m * G.inverse();
  auto after = traces_at(conj);
  for (int j = 0; j < 6; ++j)
    CHECK(std::abs(before.t[j] - after.t[j]) <
          1e-10 * std::max(1.0, std::abs(before.t[j])));
}

TEST_CASE("pole ordering follows increasing argument") {
  PoleConfig poles = PoleConfig::from_angle(0.1);
  auto order = pole_order_by_argument(poles);
  double prev = -10.0;
  for (int k : order) {
    double arg = std::arg(poles.z[k]);
    CHECK(arg > prev);
    prev = arg;
  }
}

TEST_CASE("circle direction jets match exact derivatives") {
  auto sq = [](cplx l) { return l * l; };
  Jet j1 = sym_point_jet(sq, cplx(1.0), 1e-4);
  CHECK(std::abs(j1.value - cplx(1.0)) < 1e-12);
  CHECK(std::abs(j1.derivative - cplx(2.0)) < 1e-8);

  auto c = [](cplx) { return cplx(0.7, -0.3); };
  Jet j2 = sym_point_jet(c, cplx(0, 1), 1e-4);
  CHECK(std::abs(j2.derivative) < 1e-12);

  auto ex = [](cplx l) { return std::exp(l); };
  Jet j3 = sym_point_jet(ex, cplx(0, 1), 1e-4);
  CHECK(std::abs(j3.value - std::exp(cplx(0, 1))) < 1e-12);
  CHECK(std::abs(j3.derivative - std::exp(cplx(0, 1))) < 1e-8);
  CHECK(j3.error < 1e-8);
}

TEST_CASE("lasso paths stay away from the other poles") {
  for (double theta : {0.05, 0.1, 0.125}) {
    PoleConfig poles = PoleConfig::from_angle(theta);
    for (int k = 0; k < 4; ++k) {
      Path path = lasso_path(poles, k);
      CHECK(std::abs(path.start()) < 1e-12);
      CHECK(std::abs(path.end()) < 1e-12);
      double rk = lasso_radius(poles, k);
      for (int j = 0; j < 4; ++j) {
        if (j == k) continue;
        CHECK(path.distance_to(poles.z[j]) > rk - 1e-12);
      }
    }
  }
}
