#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ortho/base_optimizer.hpp"
#include "ortho/quartic.hpp"
#include "ortho/stiefel.hpp"

namespace ortho {

enum class Method { pogo, landing, slpg, rgd, unconstrained };
enum class LambdaPolicy { fixed_half, find_root };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::pogo: return "pogo";
    case Method::landing: return "landing";
    case Method::slpg: return "slpg";
    case Method::rgd: return "rgd";
    case Method::unconstrained: return "unconstrained";
  }
  return "?";
}

struct OrthoStepConfig {
  Method method = Method::pogo;
  double eta = 0.1;
  LambdaPolicy lambda_policy = LambdaPolicy::fixed_half;
  double landing_lambda = 1.0;  // landing attraction strength
  BaseKind base = BaseKind::identity;
  BaseHyperparams base_hp;
};

struct StepDiag {
  double lambda_used = std::numeric_limits<double>::quiet_NaN();
  double root_residual = std::numeric_limits<double>::quiet_NaN();
  double g_norm = 0.0;        // base optimizer output norm
  double s_norm = 0.0;        // relative gradient (skew factor) norm
};

namespace detail {
template <class T>
void require_finite(const Matrix<T>& m, const char* who) {
  if (!all_finite(m))
    throw NumericError(std::string(who) + ": non-finite iterate");
}
}  // namespace detail

// One constrained update: base-transform the gradient, follow the tangent
// direction to M = X - eta X S, then take the normal step
// M + lambda (I - M M^H) M with lambda from the policy. The fixed-half path
// costs 4 instrumented products.
template <class T>
std::pair<Matrix<T>, StepDiag> pogo_step(const Matrix<T>& x,
                                         const Matrix<T>& grad,
                                         const OrthoStepConfig& cfg,
                                         BaseOptimizerState<T>& state) {
  if (!x.same_shape(grad))
    throw ShapeError("pogo_step: gradient shape " + grad.shape_str() +
                     " does not match iterate " + x.shape_str());
  StepDiag diag;
  Matrix<T> g = state.transform(grad);
  diag.g_norm = frobenius_norm(g);
  Matrix<T> s = skew_part(matmul(adjoint(x), g));
  diag.s_norm = frobenius_norm(s);
  Matrix<T> m = x;
  axpy(m, -cfg.eta, matmul(x, s));
  detail::require_finite(m, "pogo_step");

  Matrix<T> c = gram_residual(m);

  Matrix<T> x1 = m;
  if (cfg.lambda_policy == LambdaPolicy::fixed_half) {
    diag.lambda_used = 0.5;
    axpy(x1, -0.5, matmul(c, m));
  } else {
    Matrix<T> b = -1.0 * matmul(c, m);  // -(M M^H - I) M
    Matrix<T> mbh = matmul(m, adjoint(b));
    Matrix<T> d = mbh + adjoint(mbh);
    Matrix<T> e = matmul(b, adjoint(b));
    QuarticPoly poly;
    poly.coeffs = {frobenius_inner(e, e), 2.0 * frobenius_inner(d, e),
                   frobenius_inner(d, d) + 2.0 * frobenius_inner(c, e),
                   2.0 * frobenius_inner(c, d), frobenius_inner(c, c)};
    RootSelection sel = select_landing_step(poly);
    diag.lambda_used = sel.selected_lambda;
    diag.root_residual = sel.residual;
    axpy(x1, sel.selected_lambda, b);
  }
  detail::require_finite(x1, "pogo_step");
  return {std::move(x1), diag};
}

// X - eta (X S + lambda (X X^H - I) X); iterates may leave the manifold.
template <class T>
std::pair<Matrix<T>, StepDiag> landing_step(const Matrix<T>& x,
                                            const Matrix<T>& grad,
                                            const OrthoStepConfig& cfg,
                                            BaseOptimizerState<T>& state) {
  if (!x.same_shape(grad))
    throw ShapeError("landing_step: gradient shape " + grad.shape_str() +
                     " does not match iterate " + x.shape_str());
  StepDiag diag;
  diag.lambda_used = cfg.landing_lambda;
  Matrix<T> g = state.transform(grad);
  diag.g_norm = frobenius_norm(g);
  Matrix<T> s = skew_part(matmul(adjoint(x), g));
  diag.s_norm = frobenius_norm(s);
  Matrix<T> gram = gram_residual(x);
  Matrix<T> x1 = x;
  axpy(x1, -cfg.eta, matmul(x, s));
  axpy(x1, -cfg.eta * cfg.landing_lambda, matmul(gram, x));
  detail::require_finite(x1, "landing_step");
  return {std::move(x1), diag};
}

// Euclidean-metric proximal step Y = X - eta (G - Sym(G X^H) X) followed by
// the same half normal step as the fixed-lambda path. Uses the raw gradient;
// divergence at large eta is reported, never clamped.
template <class T>
std::pair<Matrix<T>, StepDiag> slpg_step(const Matrix<T>& x,
                                         const Matrix<T>& grad,
                                         const OrthoStepConfig& cfg) {
  if (!x.same_shape(grad))
    throw ShapeError("slpg_step: gradient shape " + grad.shape_str() +
                     " does not match iterate " + x.shape_str());
  StepDiag diag;
  diag.g_norm = frobenius_norm(grad);
  Matrix<T> sym = sym_part(matmul(grad, adjoint(x)));
  Matrix<T> dir = grad - matmul(sym, x);
  Matrix<T> y = x;
  axpy(y, -cfg.eta, dir);
  detail::require_finite(y, "slpg_step");
  Matrix<T> gram = gram_residual(y);
  Matrix<T> x1 = y;
  axpy(x1, -0.5, matmul(gram, y));
  diag.lambda_used = 0.5;
  detail::require_finite(x1, "slpg_step");
  return {std::move(x1), diag};
}

// Classic retraction baseline: move along -eta X S, retract with QR.
template <class T>
std::pair<StiefelPoint<T>, StepDiag> rgd_step(const StiefelPoint<T>& x,
                                              const Matrix<T>& grad,
                                              const OrthoStepConfig& cfg) {
  StepDiag diag;
  diag.g_norm = frobenius_norm(grad);
  TangentDirection<T> td = relative_gradient(x.matrix(), grad);
  diag.s_norm = frobenius_norm(td.skew_factor);
  Matrix<T> step = -cfg.eta * td.ambient;
  return {qr_retract(x, step), diag};
}

template <class T>
struct IterateSet {
  std::vector<Matrix<T>> matrices;
  std::vector<BaseOptimizerState<T>> states;
  std::vector<StepDiag> diags;

  static IterateSet from_points(std::vector<Matrix<T>> mats,
                                const OrthoStepConfig& cfg) {
    IterateSet its;
    its.matrices = std::move(mats);
    for (std::size_t k = 0; k < its.matrices.size(); ++k)
      its.states.emplace_back(cfg.base, cfg.base_hp,
                              "X" + std::to_string(k + 1));
    its.diags.resize(its.matrices.size());
    return its;
  }
};

// Apply the configured rule to every matrix. Matrices are independent given
// their gradients, so they update in parallel; nothing is committed unless
// every per-matrix step succeeds.
template <class T>
void multi_step(IterateSet<T>& its, const std::vector<Matrix<T>>& grads,
                const OrthoStepConfig& cfg) {
  const int L = static_cast<int>(its.matrices.size());
  if (static_cast<int>(grads.size()) != L)
    throw ShapeError("multi_step: got " + std::to_string(grads.size()) +
                     " gradients for " + std::to_string(L) + " matrices");
  std::vector<Matrix<T>> next(L);
  std::vector<BaseOptimizerState<T>> next_states = its.states;
  std::vector<StepDiag> next_diags(L);
  std::vector<std::string> errors(L);

#pragma omp parallel for schedule(dynamic) if (L > 1)
  for (int k = 0; k < L; ++k) {
    try {
      switch (cfg.method) {
        case Method::pogo: {
          auto [m, d] = pogo_step(its.matrices[k], grads[k], cfg,
                                  next_states[k]);
          next[k] = std::move(m);
          next_diags[k] = d;
          break;
        }
        case Method::landing: {
          auto [m, d] = landing_step(its.matrices[k], grads[k], cfg,
                                     next_states[k]);
          next[k] = std::move(m);
          next_diags[k] = d;
          break;
        }
        case Method::slpg: {
          auto [m, d] = slpg_step(its.matrices[k], grads[k], cfg);
          next[k] = std::move(m);
          next_diags[k] = d;
          break;
        }
        case Method::rgd: {
          auto sp = StiefelPoint<T>::certify(its.matrices[k], 1e-6);
          auto [pt, d] = rgd_step(sp, grads[k], cfg);
          next[k] = pt.matrix();
          next_diags[k] = d;
          break;
        }
        case Method::unconstrained: {
          Matrix<T> g = next_states[k].transform(grads[k]);
          next_diags[k].g_norm = frobenius_norm(g);
          Matrix<T> m = its.matrices[k];
          axpy(m, -cfg.eta, g);
          detail::require_finite(m, "unconstrained step");
          next[k] = std::move(m);
          break;
        }
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
      if (errors[k].empty()) errors[k] = "unknown error";
    }
  }

  for (int k = 0; k < L; ++k)
    if (!errors[k].empty())
      throw NumericError("multi_step: matrix " + std::to_string(k + 1) + ": " +
                         errors[k]);

  its.matrices = std::move(next);
  its.states = std::move(next_states);
  its.diags = std::move(next_diags);
}

}  // namespace ortho
