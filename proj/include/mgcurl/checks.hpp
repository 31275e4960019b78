#pragma once

#include <string>
#include <vector>

#include "mgcurl/contraction.hpp"

namespace mgcurl {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Curl seminorm of the minimal skeleton pattern on every interior x-parallel
// coarse edge of the given fine levels: positive (> 1e-8) and translation
// invariant (relative spread <= 1e-10). Returns the per-level norm values
// through `values` when non-null.
std::vector<CheckResult> run_lemma_checks(const std::vector<int>& fine_levels,
                                          std::vector<double>* values = nullptr,
                                          ExecMode mode = ExecMode::serial);

// Variational consistency of the transfers: P^T A_k P matches the directly
// assembled coarse operator to 1e-12 in the max-norm, relative to its
// largest entry.
std::vector<CheckResult> run_galerkin_checks(const std::vector<int>& fine_levels,
                                             const std::vector<double>& alphas,
                                             ExecMode mode = ExecMode::serial);

// Largest a-eigenvalue of the preconditioned operator at the safe damping
// bound (1/12 edge, 1/8 vertex): power iteration with the given step count
// must stay below 1 + 1e-8.
std::vector<CheckResult> run_spectral_checks(const std::vector<int>& fine_levels,
                                             const std::vector<double>& alphas,
                                             int power_steps = 200,
                                             ExecMode mode = ExecMode::serial);

// Largest a-eigenvalue of M^{-1} A for one configuration.
double preconditioned_lambda_max(const MultigridHierarchy& h, int k,
                                 int power_steps, std::uint64_t seed = 1);

}  // namespace mgcurl
