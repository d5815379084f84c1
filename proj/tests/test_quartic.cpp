#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ortho/quartic.hpp"
#include "ortho/rng.hpp"
#include "ortho/stiefel.hpp"

using namespace ortho;
using doctest::Approx;

namespace {
bool has_root_near(const std::vector<Complex>& roots, Complex want,
                   double tol = 1e-9) {
  return std::any_of(roots.begin(), roots.end(),
                     [&](Complex r) { return std::abs(r - want) <= tol; });
}
}  // namespace

TEST_CASE("fourth roots of unity") {
  QuarticPoly p{{1, 0, 0, 0, -1}};
  std::vector<Complex> roots = solve_quartic(p);
  REQUIRE(roots.size() == 4);
  CHECK(has_root_near(roots, {1, 0}));
  CHECK(has_root_near(roots, {-1, 0}));
  CHECK(has_root_near(roots, {0, 1}));
  CHECK(has_root_near(roots, {0, -1}));
}

TEST_CASE("expanded factorization (x-2)(x-3)(x^2+1)") {
  QuarticPoly p{{1, -5, 7, -5, 6}};
  std::vector<Complex> roots = solve_quartic(p);
  REQUIRE(roots.size() == 4);
  CHECK(has_root_near(roots, {2, 0}));
  CHECK(has_root_near(roots, {3, 0}));
  CHECK(has_root_near(roots, {0, 1}));
  CHECK(has_root_near(roots, {0, -1}));
}

TEST_CASE("degenerate leading coefficients fall back by degree") {
  // quadratic x^2 - 4
  QuarticPoly quad{{0, 0, 1, 0, -4}};
  std::vector<Complex> r2 = solve_quartic(quad);
  REQUIRE(r2.size() == 2);
  CHECK(has_root_near(r2, {2, 0}));
  CHECK(has_root_near(r2, {-2, 0}));

  // cubic (x-1)(x^2+x+1) = x^3 - 1
  QuarticPoly cubic{{0, 1, 0, 0, -1}};
  std::vector<Complex> r3 = solve_quartic(cubic);
  REQUIRE(r3.size() == 3);
  CHECK(has_root_near(r3, {1, 0}));
  CHECK(has_root_near(r3, {-0.5, std::sqrt(3.0) / 2}));

  // linear
  QuarticPoly lin{{0, 0, 0, 2, -5}};
  std::vector<Complex> r1 = solve_quartic(lin);
  REQUIRE(r1.size() == 1);
  CHECK(has_root_near(r1, {2.5, 0}));

  // nonzero constant: no roots; zero polynomial: error
  QuarticPoly constant{{0, 0, 0, 0, 3}};
  CHECK(solve_quartic(constant).empty());
  QuarticPoly zero{{0, 0, 0, 0, 0}};
  CHECK_THROWS_AS(solve_quartic(zero), DegeneracyError);
}

TEST_CASE("residual contract after polishing") {
  Rng rng(51);
  for (int t = 0; t < 200; ++t) {
    QuarticPoly p;
    for (int i = 0; i < 5; ++i) p.coeffs[i] = 4.0 * (rng.uniform() - 0.5);
    if (p.max_abs_coeff() == 0.0) continue;
    const double scale = p.max_abs_coeff();
    for (Complex r : solve_quartic(p)) {
      const double bound =
          1e-8 * scale * std::pow(std::max(1.0, std::abs(r)), 4);
      CHECK(std::abs(p.eval(r)) <= bound);
    }
  }
}

TEST_CASE("root selection tie-break table") {
  // {2, 3, i, -i}: both real roots are exact; |2| < |3|
  RootSelection a = select_landing_step(QuarticPoly{{1, -5, 7, -5, 6}});
  CHECK(a.selected_lambda == Approx(2.0).epsilon(1e-12));

  // {1, -1, i, -i}: |1| = |-1|, nonnegative real part wins
  RootSelection b = select_landing_step(QuarticPoly{{1, 0, 0, 0, -1}});
  CHECK(b.selected_lambda == Approx(1.0).epsilon(1e-12));

  // (x^2-2x+5)(x^2+2x+5): all roots have |Im| = 2 and norm sqrt(5)
  RootSelection c = select_landing_step(QuarticPoly{{1, 0, 6, 0, 25}});
  CHECK(c.selected_lambda == Approx(1.0).epsilon(1e-12));
  CHECK(c.residual > 0.0);  // no real root: the residual is surfaced

  // zero polynomial selects lambda = 0 by convention
  RootSelection z = select_landing_step(QuarticPoly{{0, 0, 0, 0, 0}});
  CHECK(z.selected_lambda == 0.0);
  CHECK(z.residual == 0.0);
  CHECK(z.roots.empty());
}

TEST_CASE("selection is scale consistent") {
  Rng rng(52);
  for (int t = 0; t < 100; ++t) {
    QuarticPoly p;
    for (int i = 0; i < 5; ++i) p.coeffs[i] = 2.0 * (rng.uniform() - 0.5);
    const double sel = select_landing_step(p).selected_lambda;
    for (double c : {3.0, 0.04, 1700.0}) {
      QuarticPoly q = p;
      for (double& x : q.coeffs) x *= c;
      CHECK(select_landing_step(q).selected_lambda ==
            Approx(sel).epsilon(1e-9));
    }
  }
}

TEST_CASE("landing polynomial of an on-manifold point is zero") {
  Matrix<double> x = random_stiefel<double>(3, 6, 53).matrix();
  QuarticPoly p = landing_poly_from(x);
  CHECK(p.max_abs_coeff() < 1e-20);
  RootSelection sel = select_landing_step(p);
  CHECK(sel.selected_lambda == 0.0);
}

TEST_CASE("landing polynomial 1x2 worked example") {
  Matrix<double> m(1, 2);
  m(0, 0) = 2.0;
  QuarticPoly p = landing_poly_from(m);
  CHECK(p.coeffs[0] == Approx(1296.0));
  CHECK(p.coeffs[1] == Approx(-1728.0));
  CHECK(p.coeffs[2] == Approx(792.0));
  CHECK(p.coeffs[3] == Approx(-144.0));
  CHECK(p.coeffs[4] == Approx(9.0));

  // evaluated polynomial equals the directly computed squared distance
  Matrix<double> ng = normal_gradient(m);
  for (int k = 0; k <= 10; ++k) {
    const double lam = 0.1 * k;
    Matrix<double> x1 = m;
    axpy(x1, -lam, ng);
    const double d = manifold_distance(x1);
    CHECK(p.eval(lam) == Approx(d * d).epsilon(1e-10));
  }
}

TEST_CASE("landing polynomial oracle on random matrices, both fields") {
  Rng rng(54);
  auto run = [&](auto tag) {
    using T = decltype(tag);
    for (int t = 0; t < 10; ++t) {
      const int p = 2 + t % 4, n = p + t % 5;
      Matrix<T> m(p, n);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) = (0.8 / std::sqrt(n)) * rng.gaussian_scalar<T>();
      QuarticPoly poly = landing_poly_from(m);
      CHECK(poly.coeffs[0] >= 0.0);  // <E,E>
      CHECK(poly.coeffs[4] >= 0.0);  // <C,C>
      const double d0 = manifold_distance(m);
      CHECK(poly.coeffs[4] == Approx(d0 * d0).epsilon(1e-12));
      Matrix<T> ng = normal_gradient(m);
      for (int k = 0; k <= 10; ++k) {
        const double lam = 0.1 * k;
        Matrix<T> x1 = m;
        axpy(x1, -lam, ng);
        const double d = manifold_distance(x1);
        CHECK(std::abs(poly.eval(lam) - d * d) <= 1e-10 * std::max(1.0, d * d));
      }
    }
  };
  run(double{});
  run(Complex{});
}
