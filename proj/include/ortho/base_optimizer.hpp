#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ortho/matrix.hpp"
#include "ortho/rng.hpp"

namespace ortho {

enum class BaseKind { identity, sgd, vadam, adam };

inline const char* base_kind_name(BaseKind k) {
  switch (k) {
    case BaseKind::identity: return "identity";
    case BaseKind::sgd: return "sgd";
    case BaseKind::vadam: return "vadam";
    case BaseKind::adam: return "adam";
  }
  return "?";
}

struct BaseHyperparams {
  double beta = 0.9;    // sgd momentum
  double beta1 = 0.9;   // adam/vadam first moment
  double beta2 = 0.999; // adam/vadam second moment
  double epsilon = 1e-8;
};

// Gradient transformer wrapped by the constrained step. One state per
// parameter matrix; transform mutates the buffers and bumps step_count.
template <class T>
class BaseOptimizerState {
 public:
  BaseOptimizerState(BaseKind kind, BaseHyperparams hp = {},
                     std::string label = "X")
      : kind_(kind), hp_(hp), label_(std::move(label)) {}

  BaseKind kind() const { return kind_; }
  long step_count() const { return step_count_; }
  const BaseHyperparams& hyperparams() const { return hp_; }

  Matrix<T> transform(const Matrix<T>& grad) {
    if (!all_finite(grad))
      throw NumericError("base optimizer: non-finite gradient for parameter " +
                         label_);
    if (registered_ && (grad.rows() != rows_ || grad.cols() != cols_))
      throw ShapeError("base optimizer: gradient shape " + grad.shape_str() +
                       " does not match registered " + std::to_string(rows_) +
                       "x" + std::to_string(cols_) + " for parameter " +
                       label_);
    if (!registered_) {
      rows_ = grad.rows();
      cols_ = grad.cols();
      registered_ = true;
    }
    ++step_count_;
    switch (kind_) {
      case BaseKind::identity:
        return grad;
      case BaseKind::sgd:
        return sgd(grad);
      case BaseKind::vadam:
        return vadam(grad);
      case BaseKind::adam:
        return adam(grad);
    }
    return grad;
  }

 private:
  Matrix<T> sgd(const Matrix<T>& grad) {
    if (momentum_.size() == 0) momentum_ = Matrix<T>(rows_, cols_);
    T* m = momentum_.data();
    const T* g = grad.data();
    for (std::size_t i = 0; i < momentum_.size(); ++i)
      m[i] = hp_.beta * m[i] + g[i];
    return momentum_;
  }

  // Per-row second moment: v_i tracks ||g_i||^2, so each row is rescaled by
  // one positive number and the update is a left-diagonal action on grad.
  Matrix<T> vadam(const Matrix<T>& grad) {
    if (first_moment_.size() == 0) {
      first_moment_ = Matrix<T>(rows_, cols_);
      row_second_.assign(rows_, 0.0);
    }
    for (int i = 0; i < rows_; ++i) {
      double rn2 = 0.0;
      for (int j = 0; j < cols_; ++j) {
        first_moment_(i, j) =
            hp_.beta1 * first_moment_(i, j) + (1.0 - hp_.beta1) * grad(i, j);
        rn2 += FieldTraits<T>::abs2(grad(i, j));
      }
      row_second_[i] = hp_.beta2 * row_second_[i] + (1.0 - hp_.beta2) * rn2;
    }
    const double bc1 = 1.0 - std::pow(hp_.beta1, double(step_count_));
    const double bc2 = 1.0 - std::pow(hp_.beta2, double(step_count_));
    Matrix<T> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
      const double vhat = row_second_[i] / bc2;
      const double denom = std::sqrt(vhat) + hp_.epsilon;
      for (int j = 0; j < cols_; ++j)
        out(i, j) = (first_moment_(i, j) * (1.0 / bc1)) * (1.0 / denom);
    }
    return out;
  }

  Matrix<T> adam(const Matrix<T>& grad) {
    if (first_moment_.size() == 0) {
      first_moment_ = Matrix<T>(rows_, cols_);
      second_moment_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    }
    const T* g = grad.data();
    T* m = first_moment_.data();
    for (std::size_t i = 0; i < grad.size(); ++i) {
      m[i] = hp_.beta1 * m[i] + (1.0 - hp_.beta1) * g[i];
      second_moment_[i] = hp_.beta2 * second_moment_[i] +
                          (1.0 - hp_.beta2) * FieldTraits<T>::abs2(g[i]);
    }
    const double bc1 = 1.0 - std::pow(hp_.beta1, double(step_count_));
    const double bc2 = 1.0 - std::pow(hp_.beta2, double(step_count_));
    Matrix<T> out(rows_, cols_);
    T* o = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double denom = std::sqrt(second_moment_[i] / bc2) + hp_.epsilon;
      o[i] = (m[i] * (1.0 / bc1)) * (1.0 / denom);
    }
    return out;
  }

  BaseKind kind_;
  BaseHyperparams hp_;
  std::string label_;
  long step_count_ = 0;
  bool registered_ = false;
  int rows_ = 0, cols_ = 0;
  Matrix<T> momentum_;              // sgd buffer / reused as nothing else
  Matrix<T> first_moment_;          // adam & vadam
  std::vector<double> second_moment_;  // adam, elementwise
  std::vector<double> row_second_;     // vadam, one entry per row
};

struct LinearityReport {
  double min_cosine = 1.0;
  bool pass = false;
};

// Empirical first-step linearity check. A linear transformer maps each
// gradient row to a positive multiple of itself on a fresh state, and its
// direction cannot depend on the input scale; both angles are measured here
// and the minimum cosine is reported. Elementwise normalizers (adam) bend
// the rows and fail.
template <class T>
LinearityReport check_linearity(BaseKind kind, int trials, std::uint64_t seed) {
  Rng rng(seed);
  const int p = 6, n = 10;
  BaseHyperparams hp;
  hp.beta = 0.3;
  hp.epsilon = 1e-12;
  LinearityReport rep;
  rep.min_cosine = 1.0;
  auto row_cosine = [&](const Matrix<T>& a, const Matrix<T>& b, int i) {
    double num = 0.0, na = 0.0, nb = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
      num += FieldTraits<T>::real_part(FieldTraits<T>::conj(b(i, j)) * a(i, j));
      na += FieldTraits<T>::abs2(a(i, j));
      nb += FieldTraits<T>::abs2(b(i, j));
    }
    return num / std::sqrt(na * nb);
  };
  for (int t = 0; t < trials; ++t) {
    Matrix<T> g(p, n);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian_scalar<T>();
    BaseOptimizerState<T> ref_state(kind, hp);
    Matrix<T> ref = ref_state.transform(g);
    for (double c : {0.1, 10.0}) {
      BaseOptimizerState<T> state(kind, hp);
      Matrix<T> out = state.transform(c * g);
      for (int i = 0; i < p; ++i) {
        rep.min_cosine = std::min(rep.min_cosine, row_cosine(out, ref, i));
        rep.min_cosine = std::min(rep.min_cosine, row_cosine(out, g, i));
      }
    }
  }
  rep.pass = rep.min_cosine >= 1.0 - 1e-6;
  return rep;
}

}  // namespace ortho
