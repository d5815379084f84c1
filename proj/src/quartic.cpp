#include "ortho/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace ortho {

namespace {

constexpr double kPi = 3.14159265358979323846;

void solve_quadratic(double a, double b, double c, std::vector<Complex>& out) {
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    out.push_back(q / a);
    if (q != 0.0)
      out.push_back(c / q);
    else
      out.push_back(-b / (2.0 * a));  // b == 0 and disc == 0: double root
  } else {
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * a);
    out.emplace_back(re, im);
    out.emplace_back(re, -im);
  }
}

// All roots of a monic depressed cubic t^3 + p t + q. Trig form for the
// three-real-root case, Cardano otherwise.
void solve_depressed_cubic(double p, double q, std::vector<Complex>& out) {
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (p == 0.0 && q == 0.0) {
    out.insert(out.end(), 3, Complex(0.0));
    return;
  }
  if (disc >= 0.0 && p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      out.emplace_back(m * std::cos(theta - 2.0 * kPi * k / 3.0));
    return;
  }
  const double radicand = q * q / 4.0 + p * p * p / 27.0;
  const double s = std::sqrt(std::max(radicand, 0.0));
  const double u = std::cbrt(-q / 2.0 + s);
  const double v = std::cbrt(-q / 2.0 - s);
  const double t1 = u + v;
  out.emplace_back(t1);
  // deflate: t^2 + t1 t + (t1^2 + p)
  solve_quadratic(1.0, t1, t1 * t1 + p, out);
}

void solve_cubic(double a, double b, double c, double d,
                 std::vector<Complex>& out) {
  const double b1 = b / a, c1 = c / a, d1 = d / a;
  const double shift = b1 / 3.0;
  const double p = c1 - b1 * b1 / 3.0;
  const double q = 2.0 * b1 * b1 * b1 / 27.0 - b1 * c1 / 3.0 + d1;
  std::vector<Complex> t;
  solve_depressed_cubic(p, q, t);
  for (Complex r : t) out.push_back(r - shift);
}

// Ferrari: depress, factor through the resolvent cubic into two quadratics.
void solve_quartic_full(const std::array<double, 5>& c,
                        std::vector<Complex>& out) {
  const double a3 = c[1] / c[0], a2 = c[2] / c[0], a1 = c[3] / c[0],
               a0 = c[4] / c[0];
  const double shift = a3 / 4.0;
  const double p = a2 - 3.0 * a3 * a3 / 8.0;
  const double q = a1 - a3 * a2 / 2.0 + a3 * a3 * a3 / 8.0;
  const double r =
      a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 * a3 * a3 * a3 / 256.0;

  const double coeff_scale =
      std::max({1.0, std::abs(p), std::abs(q), std::abs(r)});
  std::vector<Complex> y;
  if (std::abs(q) <= 1e-14 * coeff_scale) {
    // biquadratic: z^2 + p z + r with y = +-sqrt(z)
    std::vector<Complex> z;
    solve_quadratic(1.0, p, r, z);
    for (Complex zi : z) {
      const Complex s = std::sqrt(zi);
      y.push_back(s);
      y.push_back(-s);
    }
  } else {
    // resolvent z^3 - p z^2 - 4 r z + (4 p r - q^2); its largest real root
    // satisfies z0 >= p, so w below is real.
    std::vector<Complex> zr;
    solve_cubic(1.0, -p, -4.0 * r, 4.0 * p * r - q * q, zr);
    double z0 = -1e308;
    for (Complex z : zr)
      if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z.real())))
        z0 = std::max(z0, z.real());
    const double w2 = std::max(z0 - p, 0.0);
    const double w = std::sqrt(w2);
    if (w > 0.0) {
      solve_quadratic(1.0, -w, z0 / 2.0 + q / (2.0 * w), y);
      solve_quadratic(1.0, w, z0 / 2.0 - q / (2.0 * w), y);
    } else {
      std::vector<Complex> z;
      solve_quadratic(1.0, p, r, z);
      for (Complex zi : z) {
        const Complex s = std::sqrt(zi);
        y.push_back(s);
        y.push_back(-s);
      }
    }
  }
  for (Complex yi : y) out.push_back(yi - shift);
}

}  // namespace

double QuarticPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

std::vector<Complex> solve_quartic(const QuarticPoly& p, double degeneracy_tol) {
  const double scale = p.max_abs_coeff();
  if (scale == 0.0)
    throw DegeneracyError("solve_quartic: zero polynomial");
  const double cutoff = degeneracy_tol * scale;
  int degree = 0;
  for (int k = 0; k < 5; ++k) {
    if (std::abs(p.coeffs[k]) > cutoff) {
      degree = 4 - k;
      break;
    }
  }

  const std::array<double, 5>& c = p.coeffs;
  std::vector<Complex> roots;
  switch (degree) {
    case 0:
      return roots;  // nonzero constant, no roots
    case 1:
      roots.emplace_back(-c[4] / c[3]);
      break;
    case 2:
      solve_quadratic(c[2], c[3], c[4], roots);
      break;
    case 3:
      solve_cubic(c[1], c[2], c[3], c[4], roots);
      break;
    default:
      solve_quartic_full(c, roots);
      break;
  }

  // One Newton step per root; the radical formulas lose digits to
  // cancellation and this recovers them.
  for (Complex& r : roots) {
    const Complex d = p.deriv(r);
    if (std::abs(d) > 1e-300) r -= p.eval(r) / d;
  }
  return roots;
}

namespace {
bool approx_eq(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}
bool strictly_less(double a, double b) { return a < b && !approx_eq(a, b); }
}  // namespace

RootSelection select_landing_step(const QuarticPoly& p) {
  RootSelection sel;
  const double scale = p.max_abs_coeff();
  // Zero polynomial, or P(0) already at roundoff scale (an on-manifold
  // point): lambda = 0, nothing to correct.
  if (scale == 0.0) return sel;
  if (std::abs(p.coeffs[4]) <= 1e-24 * std::max(1.0, scale)) {
    sel.residual = std::abs(p.coeffs[4]);
    return sel;
  }

  sel.roots = solve_quartic(p);
  if (sel.roots.empty()) {
    sel.selected_lambda = 0.0;
    sel.residual = std::abs(p.eval(0.0));
    return sel;
  }

  Complex best = sel.roots[0];
  for (std::size_t i = 1; i < sel.roots.size(); ++i) {
    const Complex r = sel.roots[i];
    const double im_r = std::abs(r.imag()), im_b = std::abs(best.imag());
    if (strictly_less(im_r, im_b)) {
      best = r;
    } else if (approx_eq(im_r, im_b)) {
      const double ar = std::abs(r), ab = std::abs(best);
      if (strictly_less(ar, ab)) {
        best = r;
      } else if (approx_eq(ar, ab) && r.real() >= 0.0 && best.real() < 0.0) {
        best = r;
      }
    }
  }
  sel.selected_lambda = best.real();
  sel.residual = std::abs(p.eval(sel.selected_lambda));
  return sel;
}

}  // namespace ortho
