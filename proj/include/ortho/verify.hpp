#pragma once

#include <string>
#include <vector>

namespace ortho {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Property checks, cheap enough for the CLI `verify` subcommand.
CheckResult check_prop_a3();                // intermediate-step distance bound
CheckResult check_prop_a4();                // fixed-lambda one-step bound
CheckResult check_trajectory_bound();       // 1000-step trajectory bound
CheckResult check_landing_poly_oracle();    // coefficients vs direct distance
CheckResult check_quartic_roots();          // planted roots + tie-break table
CheckResult check_gradient_fd();            // finite-difference gradients
CheckResult check_orthogonality_identity(); // tangent vs normal direction
CheckResult check_linearity_suite();        // sgd / vadam pass, adam fails
CheckResult check_slpg_equivalence();       // slpg vs pogo at p in {1, n}
CheckResult check_gemm_count();             // fixed-lambda step product count

std::vector<CheckResult> run_property_checks();

// Benchmark criteria; minutes of runtime, acceptance suite only.
CheckResult criterion_pca_benchmark();
CheckResult criterion_procrustes_benchmark();
CheckResult criterion_unitary_procrustes();
CheckResult criterion_chain();

}  // namespace ortho
