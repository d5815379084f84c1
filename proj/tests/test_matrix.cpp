#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ortho/matrix.hpp"
#include "ortho/rng.hpp"

using namespace ortho;
using doctest::Approx;

namespace {
template <class T>
Matrix<T> random_matrix(int p, int n, Rng& rng) {
  Matrix<T> m(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian_scalar<T>();
  return m;
}
}  // namespace

TEST_CASE("matmul identity and hand examples") {
  Matrix<double> id = Matrix<double>::identity(3);
  Rng rng(1);
  Matrix<double> a = random_matrix<double>(3, 5, rng);
  CHECK(max_abs_diff(matmul(id, a), a) == 0.0);

  Matrix<double> m(2, 2), v(2, 1);
  m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 3; m(1, 1) = 4;
  v(0, 0) = 0; v(1, 0) = 1;
  Matrix<double> mv = matmul(m, v);
  CHECK(mv(0, 0) == Approx(2.0));
  CHECK(mv(1, 0) == Approx(4.0));
}

TEST_CASE("matmul agrees with the serial triple-loop reference") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix<double> a = random_matrix<double>(8, 8, rng);
    Matrix<double> b = random_matrix<double>(8, 8, rng);
    CHECK(max_abs_diff(matmul(a, b), matmul_serial(a, b)) < 1e-12);
  }
  // odd shapes, both fields
  Matrix<double> a = random_matrix<double>(7, 13, rng);
  Matrix<double> b = random_matrix<double>(13, 4, rng);
  CHECK(max_abs_diff(matmul(a, b), matmul_serial(a, b)) < 1e-12);
  Matrix<Complex> ac = random_matrix<Complex>(6, 9, rng);
  Matrix<Complex> bc = random_matrix<Complex>(9, 5, rng);
  CHECK(max_abs_diff(matmul(ac, bc), matmul_serial(ac, bc)) < 1e-12);
}

TEST_CASE("matmul is deterministic across repeated calls") {
  Rng rng(3);
  Matrix<double> a = random_matrix<double>(130, 90, rng);
  Matrix<double> b = random_matrix<double>(90, 110, rng);
  CHECK(max_abs_diff(matmul(a, b), matmul(a, b)) == 0.0);
}

TEST_CASE("matmul shape error names both shapes") {
  Matrix<double> a(2, 3), b(2, 3);
  CHECK_THROWS_WITH_AS(matmul(a, b),
                       doctest::Contains("2x3"), ShapeError);
}

TEST_CASE("adjoint examples and involution") {
  Matrix<double> m(2, 2);
  m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 3; m(1, 1) = 4;
  Matrix<double> mt = adjoint(m);
  CHECK(mt(0, 1) == 3.0);
  CHECK(mt(1, 0) == 2.0);

  Matrix<Complex> c(1, 1);
  c(0, 0) = Complex(0.0, 1.0);
  CHECK(adjoint(c)(0, 0) == Complex(0.0, -1.0));

  Rng rng(4);
  Matrix<Complex> a = random_matrix<Complex>(5, 7, rng);
  CHECK(max_abs_diff(adjoint(adjoint(a)), a) == 0.0);
}

TEST_CASE("frobenius inner product") {
  Matrix<double> id = Matrix<double>::identity(2);
  CHECK(frobenius_inner(id, id) == Approx(2.0));

  Matrix<double> a(1, 2);
  a(0, 0) = 3; a(0, 1) = 4;
  CHECK(frobenius_inner(a, a) == Approx(25.0));
  CHECK(frobenius_norm(a) == Approx(5.0));

  // symmetry against a direct-sum oracle
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Matrix<double> x = random_matrix<double>(4, 6, rng);
    Matrix<double> y = random_matrix<double>(4, 6, rng);
    double direct = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) direct += x(i, j) * y(i, j);
    CHECK(frobenius_inner(x, y) == Approx(direct).epsilon(1e-14));
    CHECK(frobenius_inner(x, y) ==
          Approx(frobenius_inner(y, x)).epsilon(1e-14));
  }

  // complex: real part of tr(B^H A), nonnegative on the diagonal
  Matrix<Complex> z = random_matrix<Complex>(3, 3, rng);
  CHECK(frobenius_inner(z, z) >= 0.0);
}

TEST_CASE("skew and sym parts") {
  Matrix<double> s(2, 2);
  s(0, 0) = 0; s(0, 1) = 1; s(1, 0) = -1; s(1, 1) = 0;
  CHECK(max_abs_diff(skew_part(s), s) == 0.0);

  Matrix<double> m(2, 2);
  m(0, 0) = 1; m(0, 1) = 2; m(1, 0) = 3; m(1, 1) = 4;
  Matrix<double> sk = skew_part(m);
  CHECK(sk(0, 1) == Approx(-0.5));
  CHECK(sk(1, 0) == Approx(0.5));
  CHECK(sk(0, 0) == 0.0);
  Matrix<double> sy = sym_part(m);
  CHECK(sy(0, 1) == Approx(2.5));
  CHECK(sy(1, 1) == Approx(4.0));

  // symmetric input has zero skew part
  Matrix<double> sym_in = sym_part(m);
  CHECK(frobenius_norm(skew_part(sym_in)) == 0.0);
  CHECK(frobenius_norm(sym_part(sk)) == 0.0);

  CHECK_THROWS_AS(skew_part(Matrix<double>(2, 3)), ShapeError);
  CHECK_THROWS_AS(sym_part(Matrix<double>(3, 2)), ShapeError);
}

TEST_CASE("decomposition identity and norm bounds on random matrices") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    Matrix<double> a = random_matrix<double>(6, 6, rng);
    Matrix<double> recon = skew_part(a) + sym_part(a);
    CHECK(max_abs_diff(recon, a) < 1e-14);
    CHECK(frobenius_norm(skew_part(a)) <= frobenius_norm(a) * (1 + 1e-15));
    CHECK(frobenius_norm(sym_part(a)) <= frobenius_norm(a) * (1 + 1e-15));
  }
  for (int t = 0; t < 20; ++t) {
    Matrix<Complex> a = random_matrix<Complex>(5, 5, rng);
    CHECK(max_abs_diff(skew_part(a) + sym_part(a), a) < 1e-14);
    // skew part equals its own negated adjoint
    Matrix<Complex> sk = skew_part(a);
    CHECK(max_abs_diff(sk, -1.0 * adjoint(sk)) < 1e-15);
  }
}

TEST_CASE("instrumented multiply counter") {
  Rng rng(7);
  Matrix<double> a = random_matrix<double>(4, 4, rng);
  reset_matmul_invocations();
  matmul(a, a);
  matmul(a, a);
  CHECK(matmul_invocations() == 2);
  matmul_serial(a, a);  // the reference kernel is not instrumented
  CHECK(matmul_invocations() == 2);
}

TEST_CASE("all_finite flags bad entries") {
  Matrix<double> a(2, 2);
  CHECK(all_finite(a));
  a(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(!all_finite(a));
  Matrix<Complex> c(1, 2);
  c(0, 1) = Complex(0.0, std::numeric_limits<double>::infinity());
  CHECK(!all_finite(c));
}
