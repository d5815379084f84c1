#pragma once

#include <algorithm>
#include <utility>

#include "ortho/matrix.hpp"

namespace ortho {

template <class T>
struct QrResult {
  Matrix<T> q;  // rows x cols, orthonormal columns
  Matrix<T> r;  // cols x cols, upper triangular, positive real diagonal
};

// Householder QR of a tall matrix (rows >= cols). The diagonal of R is made
// real and strictly positive, which pins the factorization uniquely and makes
// repeated calls on the same input agree exactly.
template <class T>
QrResult<T> householder_qr(const Matrix<T>& a) {
  const int m = a.rows(), n = a.cols();
  if (m < n)
    throw ShapeError("householder_qr: needs rows >= cols, got " +
                     a.shape_str());
  const double scale = frobenius_norm(a);

  Matrix<T> r = a;
  // reflectors: v_k stored in vs[k] (length m-k), with coefficient tau_k
  std::vector<std::vector<T>> vs(n);
  std::vector<double> taus(n, 0.0);

  for (int k = 0; k < n; ++k) {
    double colnorm2 = 0.0;
    for (int i = k; i < m; ++i) colnorm2 += FieldTraits<T>::abs2(r(i, k));
    const double colnorm = std::sqrt(colnorm2);
    if (colnorm <= 1e-14 * std::max(1.0, scale))
      throw DegeneracyError("householder_qr: rank-deficient at column " +
                            std::to_string(k));

    // alpha = -phase(x1) * ||x||, the cancellation-free choice
    T x1 = r(k, k);
    T phase(1);
    const double ax1 = std::sqrt(FieldTraits<T>::abs2(x1));
    if (ax1 > 0.0) phase = x1 * (1.0 / ax1);
    const T alpha = phase * (-colnorm);

    std::vector<T> v(m - k);
    v[0] = x1 - alpha;
    for (int i = k + 1; i < m; ++i) v[i - k] = r(i, k);
    double vnorm2 = 0.0;
    for (const T& e : v) vnorm2 += FieldTraits<T>::abs2(e);
    double tau = 0.0;
    if (vnorm2 > 0.0) tau = 2.0 / vnorm2;

    // apply H = I - tau v v^H to the trailing block of r
    if (tau > 0.0) {
      const int width = n - k;
#pragma omp parallel for schedule(static) if (width >= 64 && m - k >= 64)
      for (int j = k; j < n; ++j) {
        T dot(0);
        for (int i = k; i < m; ++i)
          dot += FieldTraits<T>::conj(v[i - k]) * r(i, j);
        dot *= tau;
        for (int i = k; i < m; ++i) r(i, j) -= v[i - k] * dot;
      }
    }
    r(k, k) = alpha;
    for (int i = k + 1; i < m; ++i) r(i, k) = T(0);
    vs[k] = std::move(v);
    taus[k] = tau;
  }

  // q = H_0 ... H_{n-1} applied to the first n columns of the identity
  Matrix<T> q(m, n);
  for (int j = 0; j < n; ++j) q(j, j) = T(1);
  for (int k = n - 1; k >= 0; --k) {
    if (taus[k] == 0.0) continue;
    const std::vector<T>& v = vs[k];
#pragma omp parallel for schedule(static) if (n >= 64 && m - k >= 64)
    for (int j = 0; j < n; ++j) {
      T dot(0);
      for (int i = k; i < m; ++i)
        dot += FieldTraits<T>::conj(v[i - k]) * q(i, j);
      dot *= taus[k];
      for (int i = k; i < m; ++i) q(i, j) -= v[i - k] * dot;
    }
  }

  // sign fix: make diag(R) positive real
  Matrix<T> rr(n, n);
  for (int k = 0; k < n; ++k) {
    const T rkk = r(k, k);
    const double arkk = std::sqrt(FieldTraits<T>::abs2(rkk));
    const T ph = (arkk > 0.0) ? rkk * (1.0 / arkk) : T(1);
    const T phc = FieldTraits<T>::conj(ph);
    for (int j = k; j < n; ++j) rr(k, j) = phc * r(k, j);
    rr(k, k) = T(arkk);
    for (int i = 0; i < m; ++i) q(i, k) *= ph;
  }
  return {std::move(q), std::move(rr)};
}

// Newton-Schulz projection onto the row-orthogonal matrices: the closest
// point U V^H of the SVD of a. Pre-scaling by 1/||a||_F caps every singular
// value at 1, which is inside the iteration's basin, so the manifold distance
// decreases at every step.
template <class T>
Matrix<T> polar_project(const Matrix<T>& a, double tol = 1e-12,
                        int max_iters = 200,
                        std::vector<double>* residual_history = nullptr) {
  const double nrm = frobenius_norm(a);
  if (!(nrm > 0.0) || !all_finite(a))
    throw DegeneracyError("polar_project: input norm is zero or non-finite");
  Matrix<T> x = (1.0 / nrm) * a;
  const int p = x.rows();
  double residual = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Matrix<T> gram = gram_residual(x);
    residual = frobenius_norm(gram);
    if (residual_history) residual_history->push_back(residual);
    if (residual <= tol) return x;
    // x <- x - (1/2) (x x^H - I) x
    Matrix<T> corr = matmul(gram, x);
    axpy(x, -0.5, corr);
    if (!all_finite(x))
      throw ConvergenceError("polar_project: iteration diverged", residual);
  }
  throw ConvergenceError(
      "polar_project: no convergence after " + std::to_string(max_iters) +
          " iterations (rank-deficient input?), residual " +
          std::to_string(residual) + " at size " + std::to_string(p),
      residual);
}

}  // namespace ortho
