#include <array>
#include <complex>

#include "doctest.h"
#include "fixtures.hpp"
#include "test_util.hpp"
#include "whitham/accessory.hpp"
#include "whitham/geometry_params.hpp"
#include "whitham/potential.hpp"
#include "whitham/projective.hpp"
#include "whitham/residues.hpp"

using namespace whitham;
namespace tu = whitham::testutil;

namespace {

AccessoryParams constant_chart(double offset) {
  AccessoryShape shape;
  shape.d_p = 0;
  shape.d_q = 0;
  shape.N = 0;
  AccessoryParams A;
  A.shape = shape;
  std::array<double, 4> nu{0.25, 0.25, -0.25, -0.25};
  for (int k = 0; k < 4; ++k) {
    A.p[k] = {1.0};
    A.q[k] = {nu[k] + offset};
  }
  A.xhat = {1.0};
  A.yhat = {0.0};
  return A;
}

// y as defined by the chart, computed from pole index k alone
cplx y_from_index(const AccessoryParams& A, double nu_k, int k, cplx lam) {
  LambdaPoly prod({cplx(1.0)});
  for (int j = 0; j < 4; ++j)
    if (j != k) prod = prod * A.p_poly(j);
  cplx yk = A.q_poly(k).eval(lam) + prod.eval(lam) * A.yhat_poly().eval(lam);
  return nu_k - A.p_poly(k).eval(lam) * yk;
}

}  // namespace

TEST_CASE("constant chart gives traceless residues with constant determinant") {
  AccessoryParams A = constant_chart(0.3);
  ResidueSet res(A, 0.25, 0.25);
  auto g = tu::rng(201);
  for (int rep = 0; rep < 20; ++rep) {
    cplx lam = tu::random_cplx(g);
    if (std::abs(lam) < 1e-3) continue;
    for (int k = 0; k < 4; ++k) {
      Mat2 m = res.eval(k, lam);
      CHECK(std::abs(m(0, 0) + m(1, 1)) < 1e-14);
      CHECK(std::abs(m.determinant() + cplx(0.0625)) < 1e-12);
    }
  }
}

TEST_CASE("constant chart residues have eigenvalues plus minus one quarter") {
  AccessoryParams A = constant_chart(-0.1);
  ResidueSet res(A, 0.25, 0.25);
  cplx lam(0.4, 0.7);
  for (int k = 0; k < 4; ++k) {
    Eigen::ComplexEigenSolver<Mat2> es(res.eval(k, lam));
    auto ev = es.eigenvalues();
    double lo = std::min(std::abs(ev(0) - cplx(-0.25)), std::abs(ev(0) - cplx(0.25)));
    double hi = std::min(std::abs(ev(1) - cplx(-0.25)), std::abs(ev(1) - cplx(0.25)));
    CHECK(lo < 1e-12);
    CHECK(hi < 1e-12);
  }
}

TEST_CASE("breaking the constraint makes the determinant lambda dependent") {
  AccessoryParams A = constant_chart(0.3);
  A.q[0][0] += 0.2;
  ResidueSet res(A, 0.25, 0.25);
  cplx d1 = res.eval(0, cplx(0.3, 0.0)).determinant();
  cplx d2 = res.eval(0, cplx(0.0, 0.8)).determinant();
  CHECK(std::abs(d1 - d2) > 1e-4);
}

TEST_CASE("constraint vanishes on constructed solutions and is affine in q") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(202);
  AccessoryParams A = tu::random_constrained(g, nu);
  auto ca = accessory_constraint(A, nu);
  for (cplx v : ca) CHECK(std::abs(v) < 1e-12);

  AccessoryParams B = A;
  B.q[0][0] += 1.0;
  auto cb = accessory_constraint(B, nu);
  // e_0k = p_0 q_0 - ... gains p_0 * 1, the same monic linear polynomial,
  // in each of the three blocks
  int block = (int)cb.size() / 3;
  for (int blk = 0; blk < 3; ++blk) {
    CHECK(std::abs((cb[blk * block + 0] - ca[blk * block + 0]) -
                   cplx(A.p[0][0])) < 1e-12);
    CHECK(std::abs((cb[blk * block + 1] - ca[blk * block + 1]) - cplx(1.0)) <
          1e-12);
  }
}

TEST_CASE("constraint matches the polynomial subtraction oracle") {
  AccessoryShape shape;
  shape.d_p = 2;
  shape.d_q = 2;
  std::array<double, 4> nu{0.15, 0.35, -0.15, -0.35};
  auto g = tu::rng(203);
  for (int rep = 0; rep < 10; ++rep) {
    AccessoryParams A;
    A.shape = shape;
    for (int k = 0; k < 4; ++k) {
      std::uniform_real_distribution<double> U(-1.0, 1.0);
      A.p[k] = {U(g), U(g), 1.0};
      A.q[k] = {U(g), U(g), U(g)};
    }
    A.xhat.assign(shape.N + 1, 0.0);
    A.yhat.assign(shape.N + 1, 0.0);
    A.xhat[0] = 1.0;
    auto got = accessory_constraint(A, nu);

    // oracle: coefficients of (p_0 q_0 - nu_0) - (p_k q_k - nu_k), k = 1,2,3
    int block = shape.d_p + shape.d_q + 1;
    REQUIRE((int)got.size() == 3 * block);
    for (int k = 1; k < 4; ++k) {
      LambdaPoly e = A.p_poly(0) * A.q_poly(0) - A.p_poly(k) * A.q_poly(k);
      std::vector<cplx> want(block, cplx(0));
      for (size_t i = 0; i < e.c.size() && i < want.size(); ++i) want[i] = e.c[i];
      want[0] -= cplx(nu[0] - nu[k]);
      for (int i = 0; i < block; ++i)
        CHECK(std::abs(got[(k - 1) * block + i] - want[i]) < 1e-12);
    }
  }
}

TEST_CASE("projection onto the constraint set is exact near a solution") {
  std::array<double, 4> nu{0.22, 0.28, -0.22, -0.28};
  auto g = tu::rng(204);
  for (int rep = 0; rep < 20; ++rep) {
    AccessoryParams A = tu::random_constrained(g, nu);
    for (int k = 0; k < 4; ++k)
      for (auto& c : A.q[k]) c += 0.2 * tu::random_cplx(g).real();
    AccessoryParams P = project_constraint(A, nu);
    for (cplx v : accessory_constraint(P, nu)) CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("constrained residues keep determinant and y independent of k") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(205);
  std::uniform_real_distribution<double> R(0.1, 0.95), T(0.0, 2.0 * pi);
  for (int rep = 0; rep < 20; ++rep) {
    AccessoryParams A = tu::random_constrained(g, nu);
    ResidueSet res(A, nu[0], nu[1]);
    for (int s = 0; s < 50; ++s) {
      cplx lam = R(g) * unit_circle(T(g));
      cplx yref = y_from_index(A, nu[0], 0, lam);
      for (int k = 0; k < 4; ++k) {
        Mat2 m = res.eval(k, lam);
        CHECK(std::abs(m(0, 0) + m(1, 1)) < 1e-13);
        cplx want = -cplx(nu[k] * nu[k]);
        CHECK(std::abs(m.determinant() - want) <=
              1e-10 * std::max(1.0, std::abs(want)));
        cplx yk = y_from_index(A, nu[k], k, lam);
        CHECK(std::abs(yk - yref) <= 1e-10 * std::max(1.0, std::abs(yref)));
      }
    }
  }
}

TEST_CASE("sigma conjugation relates the residue pairs") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(206);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  Mat2 sigma;
  sigma << cplx(0, 1), 0, 0, cplx(0, -1);
  for (int rep = 0; rep < 10; ++rep) {
    cplx lam = tu::random_cplx(g);
    if (std::abs(lam) < 1e-2) continue;
    Mat2 a0 = res.eval(0, lam), a2 = res.eval(2, lam);
    Mat2 a1 = res.eval(1, lam), a3 = res.eval(3, lam);
    CHECK(mat_norm(a2 - sigma * a0 * sigma.inverse()) < 1e-12);
    CHECK(mat_norm(a3 - sigma * a1 * sigma.inverse()) < 1e-12);
  }
}

TEST_CASE("real coefficients give residues real on the real axis") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(207);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  for (int rep = 0; rep < 10; ++rep) {
    cplx lam = tu::random_cplx(g);
    if (std::abs(lam) < 1e-2) continue;
    for (int k = 0; k < 4; ++k) {
      Mat2 there = res.eval(k, std::conj(lam));
      Mat2 conj_here = res.eval(k, lam).conjugate();
      CHECK(mat_norm(there - conj_here) < 1e-12);
    }
  }
}

TEST_CASE("residue entry series carry the pole and zero at lambda zero") {
  std::array<double, 4> nu{0.25, 0.25, -0.25, -0.25};
  auto g = tu::rng(208);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  auto s0 = res.entry_series(0);
  CHECK(s0[1].min_power == -1);
  CHECK(std::abs(s0[1].coeff(-1)) > 1e-12);
  CHECK(s0[2].min_power >= 1);
  CHECK_THROWS_AS((void)res.eval(0, cplx(0.0)), std::domain_error);
}

TEST_CASE("positive eigenlines move continuously along circles") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(209);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  for (double radius : {0.5, 0.9}) {
    for (int k = 0; k < 4; ++k) {
      ProjectivePoint prev = res.positive_eigenline(k, cplx(radius, 0.0));
      for (int i = 1; i <= 512; ++i) {
        cplx lam = radius * unit_circle(2.0 * pi * i / 512.0);
        ProjectivePoint cur = res.positive_eigenline(k, lam);
        CHECK(projective_distance(prev, cur) < 1e-3);
        prev = cur;
      }
    }
  }
}

TEST_CASE("potential evaluation is sigma equivariant and real") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(210);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.125);
  Mat2 sigma;
  sigma << cplx(0, 1), 0, 0, cplx(0, -1);
  cplx lam = unit_circle(0.7);
  for (int rep = 0; rep < 10; ++rep) {
    cplx z = 2.0 * tu::random_cplx(g);
    bool near_pole = false;
    for (cplx zp : poles.z) near_pole = near_pole || std::abs(z - zp) < 0.1;
    if (near_pole || std::abs(z) < 0.05) continue;
    Mat2 at = potential_eval(res, poles, z, lam);
    Mat2 at_neg = potential_eval(res, poles, -z, lam);
    CHECK(mat_norm(at_neg + sigma.inverse() * at * sigma) < 1e-11);
    Mat2 at_conj = potential_eval(res, poles, std::conj(z), std::conj(lam));
    CHECK(mat_norm(at_conj - at.conjugate()) < 1e-11);
  }
  CHECK_THROWS_AS((void)potential_eval(res, poles, poles.z[0], lam),
                  std::domain_error);
}

TEST_CASE("multiplying by z minus pole recovers the residue") {
  std::array<double, 4> nu{0.2, 0.3, -0.2, -0.3};
  auto g = tu::rng(211);
  AccessoryParams A = tu::random_constrained(g, nu);
  ResidueSet res(A, nu[0], nu[1]);
  PoleConfig poles = PoleConfig::from_angle(0.11);
  cplx lam = unit_circle(1.3);
  Mat2 want = res.eval(0, lam);
  // Richardson: f(h) = h * xi(z0 + h) = A_0 + c h + O(h^2)
  auto f = [&](double h) {
    return Mat2(cplx(h) * potential_eval(res, poles, poles.z[0] + h, lam));
  };
  Mat2 extrap = 2.0 * f(5e-5) - f(1e-4);
  CHECK(mat_norm(extrap - want) < 1e-7);
}

TEST_CASE("coincidence scan finds a constructed eigenline crossing") {
  auto v1 = [](cplx lam) { return Vec2(cplx(1.0), lam); };
  auto v2 = [](cplx lam) { return Vec2(cplx(1.0), 2.0 * lam - 0.5); };
  auto pts = coincidence_points(v1, v2, 1e-10);
  REQUIRE(pts.size() == 1);
  CHECK(std::abs(pts[0] - cplx(0.5)) < 1e-8);

  auto w2 = [](cplx lam) { return Vec2(cplx(1.0), lam + 1.0); };
  CHECK(coincidence_points(v1, w2, 1e-10).empty());
}

TEST_CASE("pole angle and conformal type invert each other") {
  PoleConfig square = pole_config_from_gamma(-1.0);
  CHECK(square.theta == doctest::Approx(0.125).epsilon(1e-12));
  cplx w = unit_circle(pi / 4.0);
  CHECK(std::abs(square.z[0] - w) < 1e-14);
  CHECK(std::abs(square.z[1] - std::conj(w)) < 1e-14);
  CHECK(std::abs(square.z[2] + w) < 1e-14);
  CHECK(std::abs(square.z[3] + std::conj(w)) < 1e-14);

  auto g = tu::rng(212);
  std::uniform_real_distribution<double> G(-60.0, -1.0);
  for (int rep = 0; rep < 100; ++rep) {
    double gamma = G(g);
    PoleConfig pc = pole_config_from_gamma(gamma);
    CHECK(std::abs(gamma_of_angle(pc.theta) - gamma) <
          1e-12 * std::abs(gamma));
    // the defining bracket of the configuration, via the projective oracle
    cplx cr = cross_ratio(affine_point(pc.z[0]), affine_point(-pc.z[1]),
                          affine_point(-pc.z[0]), affine_point(pc.z[1]));
    CHECK(std::abs(cr - cplx(gamma)) < 1e-9 * std::abs(gamma));
  }
  CHECK_THROWS_AS((void)pole_config_from_gamma(-0.5), std::domain_error);
}

TEST_CASE("geometric parameters expose the advertised derived values") {
  GeometricParams geo;
  CHECK(geo.nu0() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(geo.nu0() + geo.nu1() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(geo.sym_point0() - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(geo.sym_point1() - cplx(0, -1)) < 1e-15);

  GeometricParams bent;
  bent.H = 1.0;
  cplx l0 = bent.sym_point0(), l1 = bent.sym_point1();
  cplx h = cplx(0, 1) * (l0 + l1) / (l0 - l1);
  CHECK(std::abs(h - cplx(1.0)) < 1e-12);

  CHECK(closing_alpha(1) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(closing_alpha(2) == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-15));

  for (int g = 1; g <= 4; ++g) {
    GeometricParams gg;
    gg.alpha = closing_alpha(g);
    CHECK(gg.nu0() == doctest::Approx(0.5 / (g + 1)).epsilon(1e-14));
  }
}
