#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ortho/harness.hpp"
#include "ortho/verify.hpp"

namespace ortho {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitProperty = 3;

struct CliOptions {
  std::string problem = "pca";
  int p = 150;
  int n = 200;
  int chain_len = 8;
  std::string method = "pogo";
  std::vector<double> lr{0.1};
  std::string lambda_policy = "half";
  std::string base = "none";
  double momentum = 0.9;
  double landing_lambda = 1.0;
  int max_iters = 3000;
  double gap_tol = 1e-6;
  std::uint64_t seed = 0;
  std::string field = "real";
  std::string out;
  std::string plot;
  int log_every = 1;
  bool plateau = false;
  int plateau_patience = 10;
};

RunConfig build_config(const CliOptions& o, double lr) {
  RunConfig cfg;
  if (o.problem == "pca") cfg.problem = ProblemKind::pca;
  else if (o.problem == "procrustes") cfg.problem = ProblemKind::procrustes;
  else if (o.problem == "unitary-procrustes") {
    cfg.problem = ProblemKind::procrustes;
    cfg.complex_field = true;
  } else if (o.problem == "chain") cfg.problem = ProblemKind::chain;
  else throw UsageError("unknown problem '" + o.problem + "'");

  if (o.field == "complex") cfg.complex_field = true;
  else if (o.field != "real") throw UsageError("unknown field '" + o.field + "'");

  cfg.p = o.p;
  cfg.n = o.problem == "chain" ? o.p : o.n;  // chain factors are square
  cfg.chain_len = o.chain_len;
  cfg.seed = o.seed;
  cfg.max_iters = o.max_iters;
  cfg.gap_tol = o.gap_tol;
  cfg.log_every = o.log_every;
  cfg.plateau_halving = o.plateau;
  cfg.plateau_patience = o.plateau_patience;

  OrthoStepConfig& s = cfg.step;
  s.eta = lr;
  s.landing_lambda = o.landing_lambda;
  if (o.method == "pogo") s.method = Method::pogo;
  else if (o.method == "landing") s.method = Method::landing;
  else if (o.method == "slpg") s.method = Method::slpg;
  else if (o.method == "rgd") s.method = Method::rgd;
  else if (o.method == "unconstrained-adam") {
    s.method = Method::unconstrained;
    s.base = BaseKind::adam;
  } else throw UsageError("unknown method '" + o.method + "'");

  if (o.lambda_policy == "half") s.lambda_policy = LambdaPolicy::fixed_half;
  else if (o.lambda_policy == "root") s.lambda_policy = LambdaPolicy::find_root;
  else throw UsageError("unknown lambda policy '" + o.lambda_policy + "'");

  if (s.method != Method::unconstrained) {
    if (o.base == "none") s.base = BaseKind::identity;
    else if (o.base == "sgd") s.base = BaseKind::sgd;
    else if (o.base == "vadam") s.base = BaseKind::vadam;
    else throw UsageError("unknown base '" + o.base + "'");
  }
  s.base_hp.beta = o.momentum;
  return cfg;
}

std::string join_argv(int argc, const char* const* argv) {
  std::ostringstream os;
  os << "argv:";
  for (int i = 0; i < argc; ++i) os << " " << argv[i];
  return os.str();
}

int do_run(const CliOptions& o, const std::string& argv_line) {
  RunConfig cfg = build_config(o, o.lr.at(0));
  RunOutput out = run(cfg);

  std::vector<std::string> trailers;
  if (out.error) trailers.push_back("error: " + *out.error);
  if (!o.out.empty()) emit_csv(out.records, o.out, {argv_line}, trailers);
  if (!o.plot.empty() && out.records.size() >= 2) {
    if (!std::isnan(out.records.front().gap))
      emit_plot(out.records, o.plot + "-gap.svg", PlotColumn::gap);
    emit_plot(out.records, o.plot + "-distance.svg", PlotColumn::max_distance);
    emit_plot(out.records, o.plot + "-loss.svg", PlotColumn::loss);
  }

  std::printf("%s %s p=%d n=%d seed=%llu: iters=%ld", o.method.c_str(),
              o.problem.c_str(), cfg.p, cfg.n,
              (unsigned long long)cfg.seed, out.iterations);
  if (!std::isnan(out.final_gap)) std::printf(" gap=%.3e", out.final_gap);
  std::printf(" max_distance=%.3e time=%.2fs%s\n", out.max_logged_distance,
              out.elapsed_s, out.reached_gap_tol ? " (gap tol reached)" : "");
  if (out.error) {
    std::fprintf(stderr, "numeric failure: %s\n", out.error->c_str());
    return kExitNumeric;
  }
  return kExitOk;
}

int do_sweep(const CliOptions& o, const std::string& argv_line) {
  std::printf("%-12s %8s %14s %14s %10s %s\n", "lr", "iters", "final_gap",
              "max_distance", "time_s", "status");
  bool any_numeric = false;
  for (double lr : o.lr) {
    RunConfig cfg = build_config(o, lr);
    RunOutput out = run(cfg);
    if (!o.out.empty()) {
      std::ostringstream path;
      path << o.out << ".lr" << lr << ".csv";
      std::vector<std::string> trailers;
      if (out.error) trailers.push_back("error: " + *out.error);
      emit_csv(out.records, path.str(), {argv_line}, trailers);
    }
    std::string status = out.error            ? "numeric-failure"
                         : out.reached_gap_tol ? "converged"
                                               : "max-iters";
    std::printf("%-12g %8ld %14.6e %14.6e %10.2f %s\n", lr, out.iterations,
                out.final_gap, out.max_logged_distance, out.elapsed_s,
                status.c_str());
    any_numeric = any_numeric || out.error.has_value();
  }
  return any_numeric ? kExitNumeric : kExitOk;
}

int do_verify() {
  std::vector<CheckResult> checks = run_property_checks();
  bool all = true;
  for (const CheckResult& c : checks) {
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    all = all && c.pass;
  }
  std::printf(all ? "verify: all %zu checks passed\n"
                  : "verify: FAILURES present\n",
              checks.size());
  return all ? kExitOk : kExitProperty;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"orthogonality-constrained optimizer benchmarks"};
  app.require_subcommand(1);

  CliOptions o;
  auto add_common = [&](CLI::App* cmd, bool multi_lr) {
    cmd->add_option("--problem", o.problem,
                    "pca | procrustes | unitary-procrustes | chain");
    cmd->add_option("--p", o.p, "rows of each matrix");
    cmd->add_option("--n", o.n, "cols of each matrix");
    cmd->add_option("--chain-len", o.chain_len, "matrices in the chain");
    cmd->add_option("--method", o.method,
                    "pogo | landing | slpg | rgd | unconstrained-adam");
    auto* lr = cmd->add_option("--lr", o.lr, "learning rate(s)")
                   ->delimiter(',');
    if (!multi_lr) lr->expected(1);
    cmd->add_option("--lambda-policy", o.lambda_policy, "half | root");
    cmd->add_option("--base", o.base, "none | sgd | vadam");
    cmd->add_option("--momentum", o.momentum, "sgd base momentum");
    cmd->add_option("--landing-lambda", o.landing_lambda,
                    "landing attraction strength");
    cmd->add_option("--max-iters", o.max_iters, "iteration cap");
    cmd->add_option("--gap-tol", o.gap_tol, "early-stop optimality gap");
    cmd->add_option("--seed", o.seed, "rng seed");
    cmd->add_option("--field", o.field, "real | complex");
    cmd->add_option("--out", o.out, "output CSV path");
    cmd->add_option("--log-every", o.log_every, "logging stride");
    cmd->add_flag("--plateau", o.plateau, "halve lr when the loss plateaus");
    cmd->add_option("--plateau-patience", o.plateau_patience,
                    "logged iterations before halving");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one configuration");
  add_common(run_cmd, false);
  run_cmd->add_option("--plot", o.plot, "SVG path prefix");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "grid over --lr values, summary to stdout");
  add_common(sweep_cmd, true);

  app.add_subcommand("verify", "run the invariant/property suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage/message
    return kExitUsage;
  }

  const std::string argv_line = join_argv(argc, argv);
  try {
    if (app.got_subcommand("run")) return do_run(o, argv_line);
    if (app.got_subcommand("sweep")) return do_sweep(o, argv_line);
    return do_verify();
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitNumeric;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}

}  // namespace ortho
