#pragma once

#include <Eigen/Cholesky>

#include "mgcurl/assembly.hpp"
#include "mgcurl/smoother.hpp"
#include "mgcurl/transfer.hpp"

namespace mgcurl {

struct CycleParams {
  SmootherKind kind = SmootherKind::edge;
  double eta = kDefaultEtaEdge;
  int m = 1;  // pre- and post-smoothing steps
  // Accept damping above the provable bound (the cycle can still contract
  // there; see the smoother guard).
  bool unsafe_damping = false;
};

// Operators, transfers and smoother blocks for levels 0..top, plus a dense
// factorization of the coarsest operator. Immutable after construction;
// concurrent solves are safe as long as each carries its own workspace.
struct MultigridHierarchy {
  const GridHierarchy* grid = nullptr;
  int top_level = 0;
  CycleParams params;
  ExecMode mode = ExecMode::serial;
  std::vector<SystemOperator> ops;             // [0..top]
  std::vector<ProlongationOperator> transfers; // [k] valid for k >= 1
  std::vector<SmootherBlocks> smoothers;       // [k] valid for k >= 1
  Eigen::LLT<Eigen::MatrixXd> coarse_chol;
};

MultigridHierarchy build_multigrid(const GridHierarchy& g, int top_level,
                                   double alpha, const CycleParams& params,
                                   ExecMode mode = ExecMode::serial);

// Scratch vectors per level; reused across cycles.
struct Workspace {
  std::vector<std::vector<double>> z, r, g, c;
  void prepare(const MultigridHierarchy& h);
};

// One V(m,m) cycle for A_k z = g starting from z0: m pre-smoothing steps,
// coarse-grid correction through the restricted residual (zero initial guess
// on the coarse level), m post-smoothing steps; the coarsest system is solved
// directly.
void mg_apply(const MultigridHierarchy& h, int k, const std::vector<double>& g,
              const std::vector<double>& z0, int m, std::vector<double>& z,
              Workspace& ws);
std::vector<double> mg_apply(const MultigridHierarchy& h, int k,
                             const std::vector<double>& g,
                             const std::vector<double>& z0, int m);

// w -> w - MG(k, A_k w, 0, m): the cycle's error propagation, applied
// operationally (no matrix is formed). Level 0 gives the zero map.
void error_propagation_apply(const MultigridHierarchy& h, int k,
                             const std::vector<double>& w, int m,
                             std::vector<double>& out, Workspace& ws);

struct PcgResult {
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
};

// Preconditioned CG on the finest level of h with one V-cycle (zero initial
// guess) as preconditioner; stops when the preconditioned residual norm drops
// by rel_tol. The cycle is a symmetric positive preconditioner, so plain CG
// applies.
PcgResult pcg_solve(const MultigridHierarchy& h, const std::vector<double>& f,
                    double rel_tol, int max_iters);

}  // namespace mgcurl
