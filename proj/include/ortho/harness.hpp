#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ortho/orthoptimizer.hpp"
#include "ortho/problems.hpp"

namespace ortho {

struct UsageError : Error {
  using Error::Error;
};

enum class ProblemKind { pca, procrustes, chain };

inline const char* problem_kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::pca: return "pca";
    case ProblemKind::procrustes: return "procrustes";
    case ProblemKind::chain: return "chain";
  }
  return "?";
}

// Everything that determines a run; same config and seed give identical
// loss/gap/distance columns (wall-clock excluded).
struct RunConfig {
  ProblemKind problem = ProblemKind::pca;
  int p = 150;
  int n = 200;
  int chain_len = 8;
  bool chain_attainable = true;
  bool complex_field = false;
  std::uint64_t seed = 0;
  OrthoStepConfig step;
  int max_iters = 3000;
  double gap_tol = 1e-6;
  int log_every = 1;
  bool plateau_halving = false;
  int plateau_patience = 10;

  void validate() const {
    if (max_iters < 1) throw UsageError("max_iters must be >= 1");
    if (!(gap_tol > 0.0)) throw UsageError("gap_tol must be > 0");
    if (log_every < 1) throw UsageError("log_every must be >= 1");
    if (!(step.eta > 0.0)) throw UsageError("lr must be > 0");
    if (!(step.landing_lambda > 0.0))
      throw UsageError("landing-lambda must be > 0");
    if (p < 1 || n < 1 || p > n) throw UsageError("need 1 <= p <= n");
    if (chain_len < 1) throw UsageError("chain-len must be >= 1");
  }
};

struct RunRecord {
  long iter = 0;
  double time_s = 0.0;
  double loss = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();          // NA if unknown
  double max_distance = 0.0;
  double lambda_used = std::numeric_limits<double>::quiet_NaN();  // NA if unused
  double xi = 0.0;  // eta * max ||G|| this step
};

struct RunOutput {
  std::vector<RunRecord> records;
  std::optional<std::string> error;
  bool reached_gap_tol = false;
  long iterations = 0;
  double final_gap = std::numeric_limits<double>::quiet_NaN();
  double max_logged_distance = 0.0;
  double elapsed_s = 0.0;
  double xi_below_one_fraction = 1.0;  // over logged stepped records
};

// The training loop: evaluate gradients, step every matrix, log metrics
// every log_every iterations and at termination.
template <class T>
RunOutput run_typed(const RunConfig& cfg) {
  cfg.validate();
  Problem<T> prob = [&] {
    switch (cfg.problem) {
      case ProblemKind::pca:
        return make_pca<T>(cfg.n, cfg.p, cfg.seed);
      case ProblemKind::procrustes:
        return make_procrustes<T>(cfg.p, cfg.n, cfg.seed);
      default:
        return make_chain<T>(cfg.p, cfg.chain_len, cfg.seed,
                             cfg.chain_attainable);
    }
  }();

  std::vector<Matrix<T>> init;
  for (int k = 0; k < prob.count; ++k) {
    auto [pp, nn] = prob.shapes[k];
    init.push_back(
        random_stiefel<T>(pp, nn, cfg.seed * 0x9E3779B9ull + 101ull * k + 7ull)
            .matrix());
  }

  OrthoStepConfig step_cfg = cfg.step;
  IterateSet<T> its = IterateSet<T>::from_points(std::move(init), step_cfg);

  RunOutput out;
  long xi_small = 0, stepped_records = 0;

  auto metrics = [&](long iter, double elapsed) {
    RunRecord rec;
    rec.iter = iter;
    rec.time_s = elapsed;
    rec.loss = prob.objective(its.matrices);
    if (prob.optimal_value) rec.gap = optimality_gap(prob, its.matrices);
    double dmax = 0.0;
    for (const auto& m : its.matrices)
      dmax = std::max(dmax, manifold_distance(m));
    rec.max_distance = dmax;
    if (iter > 0) {
      double lmax = std::numeric_limits<double>::quiet_NaN();
      double gmax = 0.0;
      for (const auto& d : its.diags) {
        if (!std::isnan(d.lambda_used))
          lmax =
              std::isnan(lmax) ? d.lambda_used : std::max(lmax, d.lambda_used);
        gmax = std::max(gmax, d.g_norm);
      }
      rec.lambda_used = lmax;
      rec.xi = step_cfg.eta * gmax;
    }
    return rec;
  };

  auto log_record = [&](const RunRecord& rec) {
    out.records.push_back(rec);
    out.max_logged_distance =
        std::max(out.max_logged_distance, rec.max_distance);
    if (rec.iter > 0) {
      ++stepped_records;
      if (rec.xi < 1.0) ++xi_small;
    }
  };

  log_record(metrics(0, 0.0));

  double best_loss = std::numeric_limits<double>::infinity();
  int plateau_streak = 0;

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  for (long iter = 1; iter <= cfg.max_iters; ++iter) {
    try {
      std::vector<Matrix<T>> grads = prob.euclid_grads(its.matrices);
      multi_step(its, grads, step_cfg);
    } catch (const Error& e) {
      out.error = e.what();
      break;
    }
    RunRecord rec = metrics(iter, elapsed());
    out.iterations = iter;
    const bool stop =
        prob.optimal_value && !std::isnan(rec.gap) && rec.gap <= cfg.gap_tol;
    const bool should_log =
        (iter % cfg.log_every == 0) || stop || iter == cfg.max_iters;
    if (should_log) log_record(rec);
    if (stop) {
      out.reached_gap_tol = true;
      break;
    }
    if (cfg.plateau_halving && should_log) {
      const double min_loss = prob.maximize ? -rec.loss : rec.loss;
      if (min_loss < best_loss - 1e-12 * std::max(1.0, std::abs(best_loss))) {
        best_loss = min_loss;
        plateau_streak = 0;
      } else if (++plateau_streak >= cfg.plateau_patience) {
        step_cfg.eta *= 0.5;
        plateau_streak = 0;
      }
    }
  }

  out.elapsed_s = elapsed();
  if (!out.records.empty()) out.final_gap = out.records.back().gap;
  out.xi_below_one_fraction =
      stepped_records == 0 ? 1.0 : double(xi_small) / double(stepped_records);
  return out;
}

RunOutput run(const RunConfig& cfg);  // dispatches on cfg.complex_field

// CSV: exact header iter,time_s,loss,gap,max_distance,lambda_used,xi and one
// row per record, 17 significant digits, "NA" for absent fields, UNIX
// newlines. Comment lines ("# ...") go before the header; trailer comments
// (error reports) go after the last row.
void emit_csv(const std::vector<RunRecord>& records, const std::string& path,
              const std::vector<std::string>& comments = {},
              const std::vector<std::string>& trailers = {});
std::string format_csv(const std::vector<RunRecord>& records,
                       const std::vector<std::string>& comments = {},
                       const std::vector<std::string>& trailers = {});
std::vector<RunRecord> parse_csv(const std::string& text);

enum class PlotColumn { loss, gap, max_distance };

// Standalone SVG with a single log-y polyline against wall-clock time.
void emit_plot(const std::vector<RunRecord>& records, const std::string& path,
               PlotColumn column);
std::string format_plot(const std::vector<RunRecord>& records,
                        PlotColumn column);

int cli_main(int argc, const char* const* argv);

}  // namespace ortho
