#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ortho {

// Deterministic Gaussian source. Box-Muller on top of mt19937_64 so that
// streams are reproducible across standard libraries (std::normal_distribution
// is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in (0, 1]
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::complex<double> gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  template <class T>
  T gaussian_scalar();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

template <>
inline double Rng::gaussian_scalar<double>() {
  return gaussian();
}

template <>
inline std::complex<double> Rng::gaussian_scalar<std::complex<double>>() {
  return gaussian_complex();
}

}  // namespace ortho
