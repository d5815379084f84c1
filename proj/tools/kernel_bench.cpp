// Compares the OpenMP kernels against the serial reference and times a full
// constrained step at benchmark sizes.

#include <chrono>
#include <cstdio>

#include "ortho/orthoptimizer.hpp"

using namespace ortho;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_s();
    f();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

void bench_matmul(int n) {
  Rng rng(1234 + n);
  Matrix<double> a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = rng.gaussian();
      b(i, j) = rng.gaussian();
    }
  Matrix<double> ref, fast;
  const double t_serial = time_best_of(3, [&] { ref = matmul_serial(a, b); });
  const double t_omp = time_best_of(3, [&] { fast = matmul(a, b); });
  const double gflop = 2.0 * n * n * double(n) / 1e9;
  std::printf(
      "matmul %4dx%-4d serial %8.2f ms (%5.2f GF/s)  omp %8.2f ms (%5.2f "
      "GF/s)  speedup %.2fx  max|diff| %.2e\n",
      n, n, 1e3 * t_serial, gflop / t_serial, 1e3 * t_omp, gflop / t_omp,
      t_serial / t_omp, max_abs_diff(ref, fast));
}

void bench_step(int p, int n) {
  Matrix<double> x = random_stiefel<double>(p, n, 7).matrix();
  Rng rng(8);
  Matrix<double> g(p, n);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.gaussian();
  for (std::pair<LambdaPolicy, const char*> pol :
       {std::pair{LambdaPolicy::fixed_half, "lambda=1/2"},
        std::pair{LambdaPolicy::find_root, "find-root "}}) {
    OrthoStepConfig cfg;
    cfg.eta = 1e-3;
    cfg.lambda_policy = pol.first;
    BaseOptimizerState<double> state(BaseKind::identity);
    const double t = time_best_of(5, [&] {
      auto [out, diag] = pogo_step(x, g, cfg, state);
      (void)out;
    });
    std::printf("pogo step %s %4dx%-4d %8.2f ms\n", pol.second, p, n, 1e3 * t);
  }
}

}  // namespace

int main() {
  for (int n : {64, 128, 200, 256, 384}) bench_matmul(n);
  bench_step(150, 200);
  bench_step(200, 200);
  return 0;
}
