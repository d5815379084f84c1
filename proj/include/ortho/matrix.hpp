#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ortho {

using Complex = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct DegeneracyError : Error {
  using Error::Error;
};
struct NumericError : Error {
  using Error::Error;
};
// Iterative projection did not reach the requested tolerance.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& msg, double res)
      : Error(msg), residual(res) {}
  double residual;
};
struct UnsupportedError : Error {
  using Error::Error;
};

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static constexpr bool is_complex = false;
  static constexpr const char* name = "real64";
  static double conj(double x) { return x; }
  static double real_part(double x) { return x; }
  static double abs2(double x) { return x * x; }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool is_complex = true;
  static constexpr const char* name = "complex128";
  static Complex conj(Complex x) { return std::conj(x); }
  static double real_part(Complex x) { return x.real(); }
  static double abs2(Complex x) { return std::norm(x); }
};

// Dense row-major matrix over real64 or complex128.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0)
      throw ShapeError("Matrix: dimensions must be positive, got " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    data_.assign(static_cast<std::size_t>(rows) * cols, T(0));
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Counter for instrumented multiplies; used by operation-count tests.
inline std::atomic<long>& matmul_counter() {
  static std::atomic<long> counter{0};
  return counter;
}
inline long matmul_invocations() { return matmul_counter().load(); }
inline void reset_matmul_invocations() { matmul_counter().store(0); }

namespace detail {
template <class T>
inline void check_mul_shapes(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: inner dimensions differ, a is " + a.shape_str() +
                     ", b is " + b.shape_str());
}
}  // namespace detail

// Reference product: straight triple loop, no threading. Kept as the oracle
// the fast kernel is tested against.
template <class T>
Matrix<T> matmul_serial(const Matrix<T>& a, const Matrix<T>& b) {
  detail::check_mul_shapes(a, b);
  Matrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

// OpenMP kernel. b is packed transposed so the inner loop is two contiguous
// streams; rows are distributed across threads and each output entry is a
// serial dot product, so results do not depend on the thread count.
template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  detail::check_mul_shapes(a, b);
  matmul_counter().fetch_add(1, std::memory_order_relaxed);
  const int m = a.rows(), kk = a.cols(), n = b.cols();
  Matrix<T> bt(n, kk);
  for (int k = 0; k < kk; ++k)
    for (int j = 0; j < n; ++j) bt(j, k) = b(k, j);
  Matrix<T> c(m, n);
  const bool parallel = static_cast<long>(m) * n * kk >= 32768;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < m; ++i) {
    const T* arow = &a(i, 0);
    for (int j = 0; j < n; ++j) {
      const T* brow = &bt(j, 0);
      T sum(0);
      if constexpr (!FieldTraits<T>::is_complex) {
#pragma omp simd reduction(+ : sum)
        for (int k = 0; k < kk; ++k) sum += arow[k] * brow[k];
      } else {
        for (int k = 0; k < kk; ++k) sum += arow[k] * brow[k];
      }
      c(i, j) = sum;
    }
  }
  return c;
}

// x x^H - I, one triangle computed and mirrored, so the result is exactly
// Hermitian no matter how the compiler contracts the complex products.
// Counts as one instrumented product.
template <class T>
Matrix<T> gram_residual(const Matrix<T>& x) {
  matmul_counter().fetch_add(1, std::memory_order_relaxed);
  const int p = x.rows(), n = x.cols();
  Matrix<T> g(p, p);
  const bool parallel = static_cast<long>(p) * p * n >= 32768;
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < p; ++i) {
    const T* ri = &x(i, 0);
    for (int j = i; j < p; ++j) {
      const T* rj = &x(j, 0);
      if constexpr (!FieldTraits<T>::is_complex) {
        double sum = 0.0;
#pragma omp simd reduction(+ : sum)
        for (int k = 0; k < n; ++k) sum += ri[k] * rj[k];
        g(i, j) = sum;
        g(j, i) = sum;
      } else {
        T sum(0);
        for (int k = 0; k < n; ++k) sum += ri[k] * FieldTraits<T>::conj(rj[k]);
        if (i == j) sum = T(FieldTraits<T>::real_part(sum));
        g(i, j) = sum;
        g(j, i) = FieldTraits<T>::conj(sum);
      }
    }
    g(i, i) -= T(1);
  }
  return g;
}

// Conjugate transpose; plain transpose over the reals.
template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = FieldTraits<T>::conj(a(i, j));
  return r;
}

// Re tr(b^H a); real and symmetric in its arguments by construction.
template <class T>
double frobenius_inner(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.same_shape(b))
    throw ShapeError("frobenius_inner: shapes differ, " + a.shape_str() +
                     " vs " + b.shape_str());
  double s = 0.0;
  const T* pa = a.data();
  const T* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    s += FieldTraits<T>::real_part(FieldTraits<T>::conj(pb[i]) * pa[i]);
  return s;
}

template <class T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  const T* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) s += FieldTraits<T>::abs2(p[i]);
  return std::sqrt(s);
}

namespace detail {
template <class T>
inline void check_square(const Matrix<T>& a, const char* op) {
  if (a.rows() != a.cols())
    throw ShapeError(std::string(op) + ": requires a square matrix, got " +
                     a.shape_str());
}
}  // namespace detail

// Skew(A) = (A - A^H)/2
template <class T>
Matrix<T> skew_part(const Matrix<T>& a) {
  detail::check_square(a, "skew_part");
  Matrix<T> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r(i, j) = (a(i, j) - FieldTraits<T>::conj(a(j, i))) * 0.5;
  return r;
}

// Sym(A) = (A + A^H)/2
template <class T>
Matrix<T> sym_part(const Matrix<T>& a) {
  detail::check_square(a, "sym_part");
  Matrix<T> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      r(i, j) = (a(i, j) + FieldTraits<T>::conj(a(j, i))) * 0.5;
  return r;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.same_shape(b))
    throw ShapeError("operator+: shapes differ, " + a.shape_str() + " vs " +
                     b.shape_str());
  Matrix<T> r = a;
  T* pr = r.data();
  const T* pb = b.data();
  for (std::size_t i = 0; i < r.size(); ++i) pr[i] += pb[i];
  return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.same_shape(b))
    throw ShapeError("operator-: shapes differ, " + a.shape_str() + " vs " +
                     b.shape_str());
  Matrix<T> r = a;
  T* pr = r.data();
  const T* pb = b.data();
  for (std::size_t i = 0; i < r.size(); ++i) pr[i] -= pb[i];
  return r;
}

template <class T>
Matrix<T> operator*(double s, const Matrix<T>& a) {
  Matrix<T> r = a;
  T* pr = r.data();
  for (std::size_t i = 0; i < r.size(); ++i) pr[i] *= s;
  return r;
}

// y += alpha * x
template <class T>
void axpy(Matrix<T>& y, double alpha, const Matrix<T>& x) {
  if (!y.same_shape(x))
    throw ShapeError("axpy: shapes differ, " + y.shape_str() + " vs " +
                     x.shape_str());
  T* py = y.data();
  const T* px = x.data();
  for (std::size_t i = 0; i < y.size(); ++i) py[i] += alpha * px[i];
}

template <class T>
void subtract_identity(Matrix<T>& a) {
  detail::check_square(a, "subtract_identity");
  for (int i = 0; i < a.rows(); ++i) a(i, i) -= T(1);
}

template <class T>
bool all_finite(const Matrix<T>& a) {
  const T* p = a.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (FieldTraits<T>::is_complex) {
      if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
        return false;
    } else {
      if (!std::isfinite(p[i])) return false;
    }
  }
  return true;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.same_shape(b))
    throw ShapeError("max_abs_diff: shapes differ, " + a.shape_str() + " vs " +
                     b.shape_str());
  double m = 0.0;
  const T* pa = a.data();
  const T* pb = b.data();
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::sqrt(FieldTraits<T>::abs2(pa[i] - pb[i])));
  return m;
}

}  // namespace ortho
