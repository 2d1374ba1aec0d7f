#include <algorithm>
#include <complex>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "whitham/circle.hpp"
#include "whitham/lambda_poly.hpp"
#include "whitham/lambda_series.hpp"
#include "whitham/projective.hpp"

using namespace whitham;
namespace tu = whitham::testutil;

TEST_CASE("polynomial evaluation at fixed points") {
  CHECK(std::abs(LambdaPoly({cplx(1)}).eval(cplx(0.3, 0.1)) - cplx(1)) == 0.0);
  CHECK(std::abs(LambdaPoly({cplx(0), cplx(1)}).eval(cplx(0, 1)) - cplx(0, 1)) ==
        0.0);
  CHECK(std::abs(LambdaPoly({cplx(1), cplx(2), cplx(1)}).eval(cplx(1)) -
                 cplx(4)) < 1e-15);
}

TEST_CASE("series evaluation covers Laurent terms and truncation") {
  LambdaSeries pole(-1, {cplx(1)});
  CHECK(std::abs(pole.eval(cplx(2)) - cplx(0.5)) < 1e-15);

  LambdaSeries affine(0, {cplx(1), cplx(1)});
  CHECK(std::abs(affine.eval(cplx(0)) - cplx(1)) == 0.0);

  // geometric series for 1/(1-lambda) truncated at power 20
  std::vector<cplx> geo(21, cplx(1));
  LambdaSeries s(0, geo);
  CHECK(std::abs(s.eval(cplx(0.5)) - cplx(2)) < 1e-6);
}

TEST_CASE("series evaluation rejects lambda=0 with a pole present") {
  LambdaSeries pole(-1, {cplx(1), cplx(2)});
  CHECK_THROWS_AS((void)pole.eval(cplx(0)), std::domain_error);
}

TEST_CASE("series product evaluates to the product of evaluations") {
  auto g = tu::rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<cplx> ac(6), bc(5);
    for (auto& v : ac) v = tu::random_cplx(g);
    for (auto& v : bc) v = tu::random_cplx(g);
    LambdaSeries a(-1, ac), b(0, bc);
    LambdaSeries p = a * b;
    // the product window is the shorter contract; evaluate inside it with a
    // lambda small enough that discarded high powers stay below tolerance
    cplx lam = 0.3 * tu::random_cplx(g);
    cplx full = a.eval(lam) * b.eval(lam);
    cplx got = p.eval(lam);
    // discarded tail starts above p.max_power()
    double tail = std::pow(std::abs(lam), p.max_power() + 1) * 64.0;
    CHECK(std::abs(full - got) <= tail + 1e-12);
  }
}

TEST_CASE("series reciprocal multiplies back to one") {
  auto g = tu::rng(102);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<cplx> ac(5);
    for (auto& v : ac) v = tu::random_cplx(g);
    ac[0] += cplx(2);  // keep the leading coefficient away from zero
    LambdaSeries a(0, ac);
    LambdaSeries inv = inverse(a, 8);
    LambdaSeries prod = a * inv;
    CHECK(std::abs(prod.coeff(0) - cplx(1)) < 1e-12);
    for (int k = 1; k <= prod.max_power(); ++k)
      CHECK(std::abs(prod.coeff(k)) < 1e-12);
  }
}

TEST_CASE("unit circle sampling is unimodular and distinct") {
  CircleSampling c(16);
  auto pts = c.points();
  REQUIRE(pts.size() == 16);
  for (auto& p : pts) CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      CHECK(std::abs(pts[i] - pts[j]) > 1e-12);
  CHECK_THROWS_AS(CircleSampling(0), std::invalid_argument);
}

TEST_CASE("cross ratio fixed-convention values") {
  ProjectivePoint a(cplx(1), cplx(0)), b(cplx(0), cplx(1)), c(cplx(1), cplx(1)),
      d(cplx(2), cplx(1));
  CHECK(std::abs(cross_ratio(a, b, c, d) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(cross_ratio(a, a, c, d)) == 0.0);

  // symmetric quadruple of unit-circle points with angle pi/4 between them
  cplx w = unit_circle(pi / 4.0);
  cplx v = cross_ratio(affine_point(w), affine_point(-std::conj(w)),
                       affine_point(-w), affine_point(std::conj(w)));
  CHECK(std::abs(v - cplx(-1)) < 1e-14);
}

TEST_CASE("cross ratio throws on degenerate denominators") {
  ProjectivePoint a(cplx(1), cplx(0)), b(cplx(0), cplx(1)), c(cplx(1), cplx(1));
  CHECK_THROWS_AS((void)cross_ratio(a, b, c, a), std::domain_error);
}

TEST_CASE("cross ratio is Moebius invariant") {
  auto g = tu::rng(103);
  for (int rep = 0; rep < 200; ++rep) {
    ProjectivePoint p[4];
    for (auto& v : p) v = ProjectivePoint(tu::random_cplx(g), tu::random_cplx(g));
    Mat2 m = tu::random_invertible(g);
    cplx before, after;
    try {
      before = cross_ratio(p[0], p[1], p[2], p[3]);
      after = cross_ratio(m * p[0], m * p[1], m * p[2], m * p[3]);
    } catch (const std::domain_error&) {
      continue;  // skip the measure-zero degenerate draws
    }
    CHECK(std::abs(before - after) <
          1e-10 * std::max(1.0, std::abs(before)));
  }
}

TEST_CASE("cross ratio swap identity") {
  auto g = tu::rng(104);
  for (int rep = 0; rep < 200; ++rep) {
    ProjectivePoint p[4];
    for (auto& v : p) v = ProjectivePoint(tu::random_cplx(g), tu::random_cplx(g));
    cplx lhs, rhs;
    try {
      lhs = cross_ratio(p[0], p[1], p[2], p[3]);
      rhs = cross_ratio(p[0], p[2], p[1], p[3]);
    } catch (const std::domain_error&) {
      continue;
    }
    CHECK(std::abs(lhs - (cplx(1) - rhs)) <
          1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("positive eigenline on explicit matrices") {
  double nu = 0.25;
  Mat2 diag;
  diag << nu, 0, 0, -nu;
  CHECK(projective_distance(positive_eigenline(diag, nu),
                            ProjectivePoint(cplx(1), cplx(0))) < 1e-12);
  Mat2 swap;
  swap << 0, nu, nu, 0;
  CHECK(projective_distance(positive_eigenline(swap, nu),
                            ProjectivePoint(cplx(1), cplx(1))) < 1e-12);
}

TEST_CASE("positive eigenline rejects eigenvalue mismatch") {
  Mat2 diag;
  diag << 0.25, 0, 0, -0.25;
  CHECK_THROWS_AS((void)positive_eigenline(diag, 0.3), std::domain_error);
}

TEST_CASE("positive eigenline recovers the conjugating column") {
  auto g = tu::rng(105);
  double nu = 0.25;
  Mat2 d;
  d << nu, 0, 0, -nu;
  for (int rep = 0; rep < 1000; ++rep) {
    Mat2 m = tu::random_invertible(g);
    Mat2 a = m * d * m.inverse();
    ProjectivePoint line = positive_eigenline(a, nu);
    ProjectivePoint col(m(0, 0), m(1, 0));
    CHECK(projective_distance(line, col) < 1e-8);
    CHECK((a * line - nu * line).norm() <= 1e-10 * (1.0 + mat_norm(a)));
  }
}

TEST_CASE("roots in disk on factored cases") {
  CHECK(roots_in_disk(LambdaPoly({cplx(-2), cplx(1)}), 1.0).empty());
  auto r = roots_in_disk(LambdaPoly({cplx(-0.25), cplx(0), cplx(1)}), 1.0);
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] - cplx(-0.5)) < 1e-12);
  CHECK(std::abs(r[1] - cplx(0.5)) < 1e-12);
}

TEST_CASE("all roots match the companion matrix oracle") {
  auto g = tu::rng(106);
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<cplx> c(9);
    for (auto& v : c) v = tu::random_cplx(g);
    if (std::abs(c.back()) < 0.1) c.back() += cplx(0.5);
    LambdaPoly p(c);
    auto mine = all_roots(p);
    REQUIRE(mine.size() == 8);

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(8, 8);
    for (int i = 1; i < 8; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < 8; ++i) comp(i, 7) = -c[i] / c[8];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<cplx> oracle(es.eigenvalues().data(),
                             es.eigenvalues().data() + 8);

    // greedy match each oracle root to the nearest computed root
    std::vector<bool> used(8, false);
    for (cplx z : oracle) {
      double best = 1e9;
      int at = -1;
      for (int i = 0; i < 8; ++i) {
        if (used[i]) continue;
        double d = std::abs(mine[i] - z);
        if (d < best) {
          best = d;
          at = i;
        }
      }
      REQUIRE(at >= 0);
      used[at] = true;
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("projective distance is scale free") {
  auto g = tu::rng(107);
  for (int rep = 0; rep < 100; ++rep) {
    ProjectivePoint v(tu::random_cplx(g), tu::random_cplx(g));
    if (v.norm() < 1e-3) continue;
    cplx scale = tu::random_cplx(g, 5.0);
    if (std::abs(scale) < 1e-3) continue;
    CHECK(projective_distance(v, scale * v) < 1e-12);
  }
}
