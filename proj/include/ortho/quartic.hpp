#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ortho/matrix.hpp"

namespace ortho {

// c4 L^4 + c3 L^3 + c2 L^2 + c1 L + c0, stored as [c4, c3, c2, c1, c0].
struct QuarticPoly {
  std::array<double, 5> coeffs{};

  double eval(double x) const {
    double v = 0.0;
    for (double c : coeffs) v = v * x + c;
    return v;
  }
  Complex eval(Complex x) const {
    Complex v(0.0);
    for (double c : coeffs) v = v * x + c;
    return v;
  }
  Complex deriv(Complex x) const {
    Complex v(0.0);
    for (int k = 0; k < 4; ++k) v = v * x + (4.0 - k) * coeffs[k];
    return v;
  }
  double max_abs_coeff() const;
};

// Closed-form roots via radicals, degree reduced when leading coefficients
// fall below degeneracy_tol * max|coeff|. Each root gets one complex Newton
// polish. The root count equals the effective degree; the zero polynomial is
// an error.
std::vector<Complex> solve_quartic(const QuarticPoly& p,
                                   double degeneracy_tol = 1e-12);

struct RootSelection {
  std::vector<Complex> roots;
  double selected_lambda = 0.0;
  double residual = 0.0;  // |P(selected_lambda)|
};

// Step-size policy: real part of the root with the least |Im|; ties broken
// by smaller |root|, then by nonnegative real part. The zero polynomial
// selects lambda = 0 (nothing to correct).
RootSelection select_landing_step(const QuarticPoly& p);

// Coefficients of P(L) = ||C + D L + E L^2||^2 where C = M M^H - I,
// B = -C M, D = M B^H + B M^H, E = B B^H. P(L) equals the squared manifold
// distance of M + L (I - M M^H) M; c0 is the squared distance of M itself.
template <class T>
QuarticPoly landing_poly_from(const Matrix<T>& m) {
  Matrix<T> c = matmul(m, adjoint(m));
  subtract_identity(c);
  Matrix<T> b = -1.0 * matmul(c, m);
  Matrix<T> mbh = matmul(m, adjoint(b));
  Matrix<T> d = mbh + adjoint(mbh);
  Matrix<T> e = matmul(b, adjoint(b));
  QuarticPoly q;
  q.coeffs = {frobenius_inner(e, e), 2.0 * frobenius_inner(d, e),
              frobenius_inner(d, d) + 2.0 * frobenius_inner(c, e),
              2.0 * frobenius_inner(c, d), frobenius_inner(c, c)};
  return q;
}

}  // namespace ortho
