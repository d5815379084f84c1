#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ortho/orthoptimizer.hpp"
#include "ortho/problems.hpp"

using namespace ortho;
using doctest::Approx;

namespace {
template <class T>
Matrix<T> random_matrix(int p, int n, Rng& rng, double scale = 1.0) {
  Matrix<T> m(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * rng.gaussian_scalar<T>();
  return m;
}

template <class T>
Matrix<T> unit_norm(Matrix<T> m) {
  return (1.0 / frobenius_norm(m)) * m;
}

OrthoStepConfig pogo_cfg(double eta, LambdaPolicy pol = LambdaPolicy::fixed_half) {
  OrthoStepConfig cfg;
  cfg.method = Method::pogo;
  cfg.eta = eta;
  cfg.lambda_policy = pol;
  return cfg;
}
}  // namespace

TEST_CASE("pogo fixed points") {
  Matrix<double> x = random_stiefel<double>(3, 6, 71).matrix();
  Rng rng(72);

  // eta = 0 on the manifold: M = x and the normal gradient vanishes
  {
    BaseOptimizerState<double> st(BaseKind::identity);
    auto [out, diag] = pogo_step(x, random_matrix<double>(3, 6, rng),
                                 pogo_cfg(1e-300), st);
    CHECK(max_abs_diff(out, x) < 1e-12);
    CHECK(diag.lambda_used == 0.5);
  }
  // grad = x: the symmetric Gram kills S
  {
    BaseOptimizerState<double> st(BaseKind::identity);
    auto [out, diag] = pogo_step(x, x, pogo_cfg(0.3), st);
    CHECK(max_abs_diff(out, x) < 1e-12);
    CHECK(diag.s_norm < 1e-13);
  }
}

TEST_CASE("pogo one-step distance bound at xi = 0.1") {
  for (int t = 0; t < 20; ++t) {
    Matrix<double> x = random_stiefel<double>(20, 30, 730 + t).matrix();
    Rng rng(7300 + t);
    Matrix<double> g = unit_norm(random_matrix<double>(20, 30, rng));
    const double xi = 0.1;
    BaseOptimizerState<double> st(BaseKind::identity);
    auto [out, diag] = pogo_step(x, g, pogo_cfg(xi), st);
    const double d = manifold_distance(out);
    const double bound =
        std::pow(0.75 + xi * xi / 4, 2) * std::pow(xi, 8) * (1 + 1e-8);
    CHECK(d * d <= bound);
  }
}

TEST_CASE("find-root policy beats or matches fixed half when a real root exists") {
  for (int t = 0; t < 30; ++t) {
    Matrix<double> x = random_stiefel<double>(8, 12, 740 + t).matrix();
    Rng rng(7400 + t);
    Matrix<double> g = random_matrix<double>(8, 12, rng);
    const double eta = 0.05 + 0.05 * (t % 8);
    BaseOptimizerState<double> s1(BaseKind::identity),
        s2(BaseKind::identity);
    auto [half, dhalf] = pogo_step(x, g, pogo_cfg(eta), s1);
    auto [root, droot] =
        pogo_step(x, g, pogo_cfg(eta, LambdaPolicy::find_root), s2);
    CHECK(std::isfinite(droot.root_residual));  // residual always surfaced
    // intermediate point is shared, so compare landing polynomial values
    Matrix<double> m = x;
    axpy(m, -eta, matmul(x, relative_gradient(x, g).skew_factor));
    QuarticPoly poly = landing_poly_from(m);
    if (droot.root_residual <= 1e-8 * std::max(1.0, poly.max_abs_coeff())) {
      const double d_half = manifold_distance(half);
      const double d_root = manifold_distance(root);
      CHECK(d_root * d_root <= d_half * d_half * (1 + 1e-9) + 1e-18);
    }
  }
}

TEST_CASE("pogo fixed-half step uses at most 5 instrumented products") {
  Matrix<double> x = random_stiefel<double>(20, 30, 75).matrix();
  Rng rng(76);
  Matrix<double> g = random_matrix<double>(20, 30, rng);
  BaseOptimizerState<double> st(BaseKind::identity);
  reset_matmul_invocations();
  pogo_step(x, g, pogo_cfg(0.1), st);
  CHECK(matmul_invocations() <= 5);
}

TEST_CASE("pogo rejects non-finite gradients and mismatched shapes") {
  Matrix<double> x = random_stiefel<double>(2, 4, 77).matrix();
  Matrix<double> bad(2, 4);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  BaseOptimizerState<double> st(BaseKind::identity);
  CHECK_THROWS_AS(pogo_step(x, bad, pogo_cfg(0.1), st), NumericError);
  CHECK_THROWS_AS(pogo_step(x, Matrix<double>(4, 2), pogo_cfg(0.1), st),
                  ShapeError);
}

TEST_CASE("landing fixed points and pure attraction") {
  OrthoStepConfig cfg;
  cfg.method = Method::landing;
  cfg.eta = 0.05;
  cfg.landing_lambda = 1.0;

  Matrix<double> x = random_stiefel<double>(3, 5, 78).matrix();
  BaseOptimizerState<double> st(BaseKind::identity);
  auto [same, diag] = landing_step(x, Matrix<double>(3, 5), cfg, st);
  CHECK(max_abs_diff(same, x) < 1e-12);

  // 1x1 scalar case x = [2]: next = 2 - eta*lambda*6
  Matrix<double> two(1, 1);
  two(0, 0) = 2.0;
  BaseOptimizerState<double> st2(BaseKind::identity);
  auto [next, d2] = landing_step(two, Matrix<double>(1, 1), cfg, st2);
  CHECK(next(0, 0) == Approx(2.0 - cfg.eta * cfg.landing_lambda * 6.0));
  CHECK(std::abs(next(0, 0) - 1.0) < std::abs(2.0 - 1.0));  // strictly closer
}

TEST_CASE("slpg fixed point and intentional divergence surfaces an error") {
  Matrix<double> x = random_stiefel<double>(4, 7, 79).matrix();
  OrthoStepConfig cfg;
  cfg.method = Method::slpg;
  cfg.eta = 1e-300;
  auto [same, diag] = slpg_step(x, Matrix<double>(4, 7), cfg);
  CHECK(max_abs_diff(same, x) < 1e-12);

  cfg.eta = 1e9;
  Rng rng(80);
  Matrix<double> g = random_matrix<double>(4, 7, rng);
  Matrix<double> it = x;
  bool blew_up = false;
  for (int t = 0; t < 10 && !blew_up; ++t) {
    try {
      auto [next, d] = slpg_step(it, g, cfg);
      it = std::move(next);
    } catch (const NumericError&) {
      blew_up = true;
    }
  }
  CHECK(blew_up);
}

TEST_CASE("slpg equals pogo at p = n and differs otherwise") {
  Rng rng(81);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 6;
    Matrix<double> x = random_stiefel<double>(n, n, 810 + t).matrix();
    Matrix<double> g = random_matrix<double>(n, n, rng);
    OrthoStepConfig cfg = pogo_cfg(0.07);
    BaseOptimizerState<double> st(BaseKind::identity);
    auto [xs, ds] = slpg_step(x, g, cfg);
    auto [xp, dp] = pogo_step(x, g, cfg, st);
    CHECK(frobenius_norm(xs - xp) <= 1e-12);
  }
  // p = 1: the directions are parallel and slpg(eta) matches pogo(2 eta);
  // with a shared eta the tangent move differs by the factor 2
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + t % 7;
    Matrix<double> x = random_stiefel<double>(1, n, 820 + t).matrix();
    Matrix<double> g = random_matrix<double>(1, n, rng);
    OrthoStepConfig cfg = pogo_cfg(0.05);
    OrthoStepConfig cfg2 = pogo_cfg(0.10);
    BaseOptimizerState<double> st(BaseKind::identity);
    auto [xs, ds] = slpg_step(x, g, cfg);
    auto [xp2, dp2] = pogo_step(x, g, cfg2, st);
    CHECK(frobenius_norm(xs - xp2) <= 1e-12);
  }
  // p = 3, n = 7: the Euclidean-metric gradient carries an extra component
  Matrix<double> x = random_stiefel<double>(3, 7, 83).matrix();
  Matrix<double> g = random_matrix<double>(3, 7, rng);
  OrthoStepConfig cfg = pogo_cfg(0.07);
  BaseOptimizerState<double> st(BaseKind::identity);
  auto [xs, ds] = slpg_step(x, g, cfg);
  auto [xp, dp] = pogo_step(x, g, cfg, st);
  CHECK(frobenius_norm(xs - xp) > 1e-6);
}

TEST_CASE("rgd stays on the manifold and matches the circle geodesic") {
  OrthoStepConfig cfg;
  cfg.method = Method::rgd;
  cfg.eta = 0.05;

  StiefelPoint<double> x = random_stiefel<double>(4, 9, 84);
  auto [same, d0] = rgd_step(x, Matrix<double>(4, 9), cfg);
  CHECK(max_abs_diff(same.matrix(), x.matrix()) < 1e-12);

  Rng rng(85);
  for (int t = 0; t < 10; ++t) {
    Matrix<double> g = random_matrix<double>(4, 9, rng);
    auto [out, d] = rgd_step(x, g, cfg);
    CHECK(manifold_distance(out.matrix()) <= 1e-10);
  }

  // St(1, 2) is the unit circle: QR retraction of a tangent step of arc
  // length delta rotates by atan(delta) = delta + O(delta^3)
  const double theta0 = 0.7;
  Matrix<double> circ(1, 2);
  circ(0, 0) = std::cos(theta0);
  circ(0, 1) = std::sin(theta0);
  StiefelPoint<double> c = StiefelPoint<double>::certify(circ);
  Matrix<double> g = random_matrix<double>(1, 2, rng);
  for (double eta : {0.02, 0.05, 0.1}) {
    OrthoStepConfig ccfg = cfg;
    ccfg.eta = eta;
    TangentDirection<double> td = relative_gradient(circ, g);
    const double speed = frobenius_norm(td.ambient);
    // signed tangent component along (-sin, cos)
    const double comp = -std::sin(theta0) * td.ambient(0, 0) +
                        std::cos(theta0) * td.ambient(0, 1);
    auto [out, d] = rgd_step(c, g, ccfg);
    const double theta1 = std::atan2(out.matrix()(0, 1), out.matrix()(0, 0));
    const double expected = theta0 - eta * comp;
    CHECK(std::abs(theta1 - expected) <= std::pow(eta * speed, 2) + 1e-14);
  }
}

TEST_CASE("intermediate-step bound over random skew directions") {
  Rng rng(86);
  for (int t = 0; t < 20; ++t) {
    Matrix<double> x = random_stiefel<double>(20, 30, 860 + t).matrix();
    Matrix<double> s = skew_part(random_matrix<double>(30, 30, rng));
    const double eta = 0.01 + 0.02 * (t % 10);
    Matrix<double> m = x;
    axpy(m, -eta, matmul(x, s));
    CHECK(manifold_distance(m) <=
          eta * eta * frobenius_norm(matmul(s, s)) * (1 + 1e-10));
  }
}

TEST_CASE("complex pogo keeps unitary iterates close") {
  for (int t = 0; t < 10; ++t) {
    Matrix<Complex> x = random_stiefel<Complex>(10, 16, 870 + t).matrix();
    Rng rng(8700 + t);
    Matrix<Complex> g = unit_norm(random_matrix<Complex>(10, 16, rng));
    const double xi = 0.3;
    BaseOptimizerState<Complex> st(BaseKind::identity);
    auto [out, diag] = pogo_step(x, g, pogo_cfg(xi), st);
    const double d = manifold_distance(out);
    CHECK(d * d <= std::pow(0.75 + xi * xi / 4, 2) * std::pow(xi, 8) *
                       (1 + 1e-8));
  }
}

TEST_CASE("multi_step with one matrix reduces to the single-matrix op") {
  Matrix<double> x = random_stiefel<double>(5, 8, 88).matrix();
  Rng rng(89);
  Matrix<double> g = random_matrix<double>(5, 8, rng);
  OrthoStepConfig cfg = pogo_cfg(0.1);

  IterateSet<double> its = IterateSet<double>::from_points({x}, cfg);
  multi_step(its, {g}, cfg);

  BaseOptimizerState<double> st(BaseKind::identity);
  auto [expect, diag] = pogo_step(x, g, cfg, st);
  CHECK(max_abs_diff(its.matrices[0], expect) == 0.0);
}

TEST_CASE("multi_step updates identical copies identically") {
  Matrix<double> x = random_stiefel<double>(5, 8, 90).matrix();
  Rng rng(91);
  Matrix<double> g = random_matrix<double>(5, 8, rng);
  OrthoStepConfig cfg = pogo_cfg(0.1);
  IterateSet<double> its = IterateSet<double>::from_points({x, x, x}, cfg);
  multi_step(its, {g, g, g}, cfg);
  CHECK(max_abs_diff(its.matrices[0], its.matrices[1]) == 0.0);
  CHECK(max_abs_diff(its.matrices[0], its.matrices[2]) == 0.0);
}

TEST_CASE("multi_step is atomic on per-matrix failure") {
  OrthoStepConfig cfg = pogo_cfg(0.1);
  cfg.base = BaseKind::sgd;
  cfg.base_hp.beta = 0.5;
  std::vector<Matrix<double>> mats;
  for (int k = 0; k < 3; ++k)
    mats.push_back(random_stiefel<double>(4, 6, 920 + k).matrix());
  IterateSet<double> its = IterateSet<double>::from_points(mats, cfg);

  Rng rng(93);
  std::vector<Matrix<double>> grads;
  for (int k = 0; k < 3; ++k) grads.push_back(random_matrix<double>(4, 6, rng));
  multi_step(its, grads, cfg);  // one good step to fill the momentum buffers
  const IterateSet<double> snapshot = its;

  grads[1](2, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(multi_step(its, grads, cfg), NumericError);
  for (int k = 0; k < 3; ++k) {
    CHECK(max_abs_diff(its.matrices[k], snapshot.matrices[k]) == 0.0);
    CHECK(its.states[k].step_count() == snapshot.states[k].step_count());
  }
}

TEST_CASE("eight-matrix chain stays feasible over 100 pogo steps") {
  OrthoStepConfig cfg = pogo_cfg(0.05);
  cfg.base = BaseKind::vadam;
  Problem<double> prob = make_chain<double>(8, 8, 94, true);
  std::vector<Matrix<double>> init;
  for (int k = 0; k < 8; ++k)
    init.push_back(random_stiefel<double>(8, 8, 940 + k).matrix());
  IterateSet<double> its = IterateSet<double>::from_points(init, cfg);
  for (int t = 0; t < 100; ++t)
    multi_step(its, prob.euclid_grads(its.matrices), cfg);
  double dmax = 0.0;
  for (const auto& m : its.matrices)
    dmax = std::max(dmax, manifold_distance(m));
  CHECK(dmax <= 1e-6);
}
