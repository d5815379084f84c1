#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ortho/factorizations.hpp"
#include "ortho/matrix.hpp"
#include "ortho/stiefel.hpp"

namespace ortho {

// A benchmark objective over L wide matrices. `objective` is the reported
// value; maximization problems are negated behind `loss`/`euclid_grads` so
// every optimizer minimizes.
template <class T>
struct Problem {
  std::string name;
  int count = 1;
  std::vector<std::pair<int, int>> shapes;
  bool maximize = false;
  std::function<double(const std::vector<Matrix<T>>&)> objective;
  // gradients of the minimized loss
  std::function<std::vector<Matrix<T>>(const std::vector<Matrix<T>>&)>
      euclid_grads;
  std::optional<double> optimal_value;
  std::vector<Matrix<T>> reference_optimum;

  double loss(const std::vector<Matrix<T>>& xs) const {
    const double f = objective(xs);
    return maximize ? -f : f;
  }
};

template <class T>
double optimality_gap(const Problem<T>& problem,
                      const std::vector<Matrix<T>>& params) {
  if (!problem.optimal_value)
    throw UnsupportedError("optimality_gap: problem '" + problem.name +
                           "' has no known optimal value");
  const double opt = *problem.optimal_value;
  return std::abs(problem.objective(params) - opt) / std::max(std::abs(opt), 1.0);
}

// Planted spectrum for the PCA gram matrix: exponential decay with condition
// number exactly 1000 (mu_1 = 1, mu_n = 1e-3).
inline std::vector<double> pca_spectrum(int n) {
  std::vector<double> mu(n);
  for (int i = 0; i < n; ++i)
    mu[i] = (n == 1) ? 1.0 : std::pow(1000.0, -double(i) / double(n - 1));
  return mu;
}

// Top-p eigenvector problem: maximize tr(X gram X^H) over St(p, n) where
// gram = Q diag(mu) Q^H with Haar Q. The optimum sum(top-p mu) is known from
// the planted spectrum, no eigensolver involved.
template <class T>
Problem<T> make_pca(int n, int p, std::uint64_t seed) {
  if (p > n) throw ShapeError("make_pca: needs p <= n");
  const std::vector<double> mu = pca_spectrum(n);
  Matrix<T> q = random_stiefel<T>(n, n, seed).matrix();
  Matrix<T> scaled = q;  // diag(mu) Q, scaling row i of Q by mu_i
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = mu[i] * q(i, j);
  Matrix<T> gram = matmul(adjoint(q), scaled);  // Q^H diag(mu) Q

  Problem<T> prob;
  prob.name = "pca";
  prob.count = 1;
  prob.shapes = {{p, n}};
  prob.maximize = true;
  double opt = 0.0;
  for (int i = 0; i < p; ++i) opt += mu[i];
  prob.optimal_value = opt;

  // rows of Q give the eigenvectors; the top-p rows achieve the optimum
  Matrix<T> xstar(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) xstar(i, j) = q(i, j);
  prob.reference_optimum.push_back(std::move(xstar));

  prob.objective = [gram](const std::vector<Matrix<T>>& xs) {
    return frobenius_inner(matmul(xs[0], gram), xs[0]);
  };
  prob.euclid_grads = [gram](const std::vector<Matrix<T>>& xs) {
    std::vector<Matrix<T>> g;
    g.push_back(-2.0 * matmul(xs[0], gram));  // minimizing the negation
    return g;
  };
  return prob;
}

// Matrix alignment min ||A X - B||^2 for given data. The analytic optimum is
// the Stiefel projection of A^H B.
template <class T>
Problem<T> make_procrustes_from(Matrix<T> a, Matrix<T> b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() > b.cols())
    throw ShapeError("make_procrustes_from: need square A (" + a.shape_str() +
                     ") matching wide B (" + b.shape_str() + ")");
  Problem<T> prob;
  prob.name = FieldTraits<T>::is_complex ? "unitary-procrustes" : "procrustes";
  prob.count = 1;
  prob.shapes = {{b.rows(), b.cols()}};

  Matrix<T> xstar = polar_project(matmul(adjoint(a), b), 1e-12, 400);
  Matrix<T> res = matmul(a, xstar) - b;
  prob.optimal_value = frobenius_inner(res, res);
  prob.reference_optimum.push_back(std::move(xstar));

  prob.objective = [a, b](const std::vector<Matrix<T>>& xs) {
    Matrix<T> r = matmul(a, xs[0]) - b;
    return frobenius_inner(r, r);
  };
  prob.euclid_grads = [a, b](const std::vector<Matrix<T>>& xs) {
    Matrix<T> r = matmul(a, xs[0]) - b;
    std::vector<Matrix<T>> g;
    g.push_back(2.0 * matmul(adjoint(a), r));
    return g;
  };
  return prob;
}

// Gaussian instance; complex data gives the unitary variant.
template <class T>
Problem<T> make_procrustes(int p, int n, std::uint64_t seed) {
  if (p > n) throw ShapeError("make_procrustes: needs p <= n");
  Rng rng(seed);
  Matrix<T> a(p, p), b(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.gaussian_scalar<T>();
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = rng.gaussian_scalar<T>();
  return make_procrustes_from(std::move(a), std::move(b));
}

// Coupled product chain min ||A X_1 ... X_L - B||^2 over square orthogonal
// factors. With `attainable`, B = A Q_1 ... Q_L for planted Haar Q_i and the
// optimum is exactly 0.
template <class T>
Problem<T> make_chain(int p, int chain_len, std::uint64_t seed,
                      bool attainable) {
  if (chain_len < 1) throw ShapeError("make_chain: needs L >= 1");
  Rng rng(seed);
  Matrix<T> a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.gaussian_scalar<T>();

  Problem<T> prob;
  prob.name = "chain";
  prob.count = chain_len;
  prob.shapes.assign(chain_len, {p, p});

  Matrix<T> b;
  if (attainable) {
    Matrix<T> prod = a;
    for (int k = 0; k < chain_len; ++k) {
      Matrix<T> qk = random_stiefel<T>(p, p, seed * 7919 + 13 * k + 1).matrix();
      prob.reference_optimum.push_back(qk);
      prod = matmul(prod, qk);
    }
    b = std::move(prod);
    prob.optimal_value = 0.0;
  } else {
    b = Matrix<T>(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) b(i, j) = rng.gaussian_scalar<T>();
  }

  const int L = chain_len;
  prob.objective = [a, b, L](const std::vector<Matrix<T>>& xs) {
    Matrix<T> prod = a;
    for (int k = 0; k < L; ++k) prod = matmul(prod, xs[k]);
    Matrix<T> r = prod - b;
    return frobenius_inner(r, r);
  };
  // d/dX_k = 2 Prefix_k^H R Suffix_k^H with Prefix_k = A X_1..X_{k-1},
  // Suffix_k = X_{k+1}..X_L, R = A prod(X) - B.
  prob.euclid_grads = [a, b, L](const std::vector<Matrix<T>>& xs) {
    std::vector<Matrix<T>> prefix(L);
    prefix[0] = a;
    for (int k = 1; k < L; ++k) prefix[k] = matmul(prefix[k - 1], xs[k - 1]);
    Matrix<T> r = matmul(prefix[L - 1], xs[L - 1]) - b;
    std::vector<Matrix<T>> suffix(L);  // suffix[k] = X_{k+1}..X_L
    suffix[L - 1] = Matrix<T>::identity(xs[L - 1].cols());
    for (int k = L - 2; k >= 0; --k) suffix[k] = matmul(xs[k + 1], suffix[k + 1]);
    std::vector<Matrix<T>> g(L);
    for (int k = 0; k < L; ++k)
      g[k] = 2.0 * matmul(adjoint(prefix[k]), matmul(r, adjoint(suffix[k])));
    return g;
  };
  return prob;
}

}  // namespace ortho
