#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mgcurl/vcycle.hpp"

namespace mgcurl {

// One contraction-number sweep: every (alpha, level, steps) combination for
// one smoother kind.
struct ExperimentConfig {
  SmootherKind kind = SmootherKind::edge;
  std::vector<double> alphas = {0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<int> levels = {1, 2, 3, 4};
  std::vector<int> steps = {1, 2, 3, 4, 5};
  double eta = 0.0;  // 0: default for the kind (1/13 edge, 1/9 vertex)
  bool unsafe_damping = false;  // accept eta above the provable bound
  std::uint64_t seed = 20240817ull;
  double tol = 1e-6;
  int cap = 500;
  enum class Format { csv, markdown };
  Format format = Format::csv;
  bool deterministic = false;  // serial kernels, sequential rows, zeroed time

  double effective_eta() const { return eta > 0.0 ? eta : default_eta(kind); }
  // Throws std::invalid_argument on empty lists or out-of-range values.
  void validate() const;
};

struct ContractionEstimate {
  double rho = 0.0;
  int iterations = 0;
  bool converged = false;
};

// a-norm power iteration on the V(m,m) error propagation at level k, started
// from a seeded uniform random vector; the Rayleigh quotient a(Ew,w)/a(w,w)
// is monotone for this a-symmetric positive semidefinite operator, and the
// iteration stops once its relative change drops below tol (or at cap).
ContractionEstimate estimate_contraction(const MultigridHierarchy& h, int k,
                                         int m, std::uint64_t seed, double tol,
                                         int cap);

struct ContractionRow {
  SmootherKind kind = SmootherKind::edge;
  double alpha = 1.0;
  int k = 1;
  int m = 1;
  double rho = 0.0;
  int iters = 0;
  bool converged = false;
  double seconds = 0.0;
  std::uint64_t seed = 0;
};

struct ContractionReport {
  std::vector<ContractionRow> rows;
  bool all_converged() const;
};

// Rows in alpha-major order, then level, then steps. One hierarchy is built
// per alpha and shared across its rows.
ContractionReport run_table(const ExperimentConfig& cfg);

// Canonical CSV: header "smoother,alpha,k,m,rho,iters,seconds,seed"; rho with
// nine significant digits. zero_seconds pins the timing column for
// byte-reproducible output.
void write_csv(const ContractionReport& rep, std::ostream& os, bool zero_seconds);
// One pivot table per alpha: rows k, columns m.
void write_markdown(const ContractionReport& rep, std::ostream& os);

std::string smoother_name(SmootherKind k);

// L2 errors of the discrete solutions against u = (g(x)g(y)g(z), 0, 0),
// g(t) = sin(pi t), whose load is alpha curl curl u + u. Index q of the
// result is the error on level q+1; each solve runs PCG with a V-cycle
// preconditioner to 1e-10. Successive ratios approach 2 (first-order in h).
std::vector<double> manufactured_convergence(double alpha, int max_level,
                                             int quad_order = 4,
                                             SmootherKind kind = SmootherKind::vertex,
                                             ExecMode mode = ExecMode::serial);

// The exact field and load of the manufactured problem.
Vec3 manufactured_field(const Vec3& p);
Vec3 manufactured_load(double alpha, const Vec3& p);

}  // namespace mgcurl
