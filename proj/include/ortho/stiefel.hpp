#pragma once

#include <utility>

#include "ortho/factorizations.hpp"
#include "ortho/matrix.hpp"
#include "ortho/rng.hpp"

namespace ortho {

// ||X X^H - I_p||_F, the manifold distance plotted by the harness.
template <class T>
double manifold_distance(const Matrix<T>& x) {
  return frobenius_norm(gram_residual(x));
}

// grad of N(X) = (1/4)||X X^H - I||^2, i.e. (X X^H - I) X.
template <class T>
Matrix<T> normal_gradient(const Matrix<T>& x) {
  return matmul(gram_residual(x), x);
}

struct FeasibilityError : Error {
  using Error::Error;
};

// A wide matrix certified row-orthogonal within certified_tol at construction.
// Infeasible baselines carry plain matrices instead; `unchecked` exists for
// them only.
template <class T>
class StiefelPoint {
 public:
  static StiefelPoint certify(Matrix<T> m, double tol = 1e-8) {
    if (m.rows() > m.cols())
      throw ShapeError("StiefelPoint: needs p <= n, got " + m.shape_str());
    const double d = manifold_distance(m);
    if (!(d <= tol))
      throw FeasibilityError("StiefelPoint: distance " + std::to_string(d) +
                             " exceeds tolerance " + std::to_string(tol));
    return StiefelPoint(std::move(m), tol);
  }

  static StiefelPoint unchecked(Matrix<T> m) {
    return StiefelPoint(std::move(m), -1.0);
  }

  const Matrix<T>& matrix() const { return m_; }
  double certified_tol() const { return tol_; }

 private:
  StiefelPoint(Matrix<T> m, double tol) : m_(std::move(m)), tol_(tol) {}
  Matrix<T> m_;
  double tol_;
};

// Tangent direction at X in the X*S parameterization, S skew-Hermitian.
template <class T>
struct TangentDirection {
  Matrix<T> ambient;      // X * S, p x n
  Matrix<T> skew_factor;  // S, n x n
};

// S = Skew(X^H g); ambient = X S. The ambient part is Frobenius-orthogonal
// to the normal gradient at any x, on or off the manifold.
template <class T>
TangentDirection<T> relative_gradient(const Matrix<T>& x, const Matrix<T>& g) {
  if (!x.same_shape(g))
    throw ShapeError("relative_gradient: shapes differ, " + x.shape_str() +
                     " vs " + g.shape_str());
  Matrix<T> s = skew_part(matmul(adjoint(x), g));
  Matrix<T> ambient = matmul(x, s);
  return {std::move(ambient), std::move(s)};
}

// QR retraction: factor (x + step)^H and return the adjoint of its Q.
template <class T>
StiefelPoint<T> qr_retract(const StiefelPoint<T>& x, const Matrix<T>& step) {
  Matrix<T> moved = x.matrix();
  if (!moved.same_shape(step))
    throw ShapeError("qr_retract: step shape " + step.shape_str() +
                     " does not match point " + moved.shape_str());
  axpy(moved, 1.0, step);
  QrResult<T> qr = householder_qr(adjoint(moved));
  return StiefelPoint<T>::certify(adjoint(qr.q), 1e-10);
}

// Haar-distributed point via sign-corrected QR of a Gaussian matrix.
template <class T>
StiefelPoint<T> random_stiefel(int p, int n, std::uint64_t seed) {
  if (p > n)
    throw ShapeError("random_stiefel: needs p <= n, got p=" +
                     std::to_string(p) + " n=" + std::to_string(n));
  Rng rng(seed);
  Matrix<T> g(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) g(i, j) = rng.gaussian_scalar<T>();
  QrResult<T> qr = householder_qr(g);
  return StiefelPoint<T>::certify(adjoint(qr.q), 1e-12);
}

}  // namespace ortho
