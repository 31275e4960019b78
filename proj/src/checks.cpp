#include "mgcurl/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mgcurl/rng.hpp"

namespace mgcurl {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

std::vector<CheckResult> run_lemma_checks(const std::vector<int>& fine_levels,
                                          std::vector<double>* values,
                                          ExecMode mode) {
  std::vector<CheckResult> out;
  for (int k : fine_levels) {
    const GridHierarchy grid = build_hierarchy(k);
    const SystemOperator op = assemble_operator(grid, k, 1.0, mode);
    const GridLevel& coarse = grid.level(k - 1);
    double lo = 1e300, hi = 0.0;
    for (const auto& e : coarse.interior_edges()) {
      if (e.dir != 0) continue;
      const double v = lemma_coarse_check(grid, op, k, e);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double spread = (hi - lo) / hi;
    CheckResult r;
    r.name = "coarse-edge curl pattern, level " + std::to_string(k);
    r.pass = lo > 1e-8 && spread <= 1e-10;
    r.detail = fmt("min curl norm %.6e, relative spread %.2e", lo, spread);
    out.push_back(r);
    if (values) values->push_back(hi);
  }
  return out;
}

std::vector<CheckResult> run_galerkin_checks(const std::vector<int>& fine_levels,
                                             const std::vector<double>& alphas,
                                             ExecMode mode) {
  std::vector<CheckResult> out;
  for (int k : fine_levels) {
    const GridHierarchy grid = build_hierarchy(k);
    for (double alpha : alphas) {
      const SystemOperator fine = assemble_operator(grid, k, alpha, mode);
      const SystemOperator coarse = assemble_operator(grid, k - 1, alpha, mode);
      const ProlongationOperator t = build_prolongation(grid, k, mode);

      // Column i of P^T A P via two matvecs, compared against row i of the
      // directly assembled coarse operator.
      const int nc = coarse.n_dofs;
      const int nf = fine.n_dofs;
      double worst = 0.0;
      std::vector<double> ei(nc, 0.0), pf(nf), apf(nf), col(nc);
      for (int i = 0; i < nc; ++i) {
        ei[i] = 1.0;
        prolongate(t, ei, pf, mode);
        csr_matvec(fine.combined, pf.data(), apf.data(), mode);
        restrict_functional(t, apf, col, mode);
        ei[i] = 0.0;
        for (int j = 0; j < nc; ++j) {
          const double ref = csr_get(coarse.combined, i, j);
          worst = std::max(worst, std::abs(col[j] - ref));
        }
      }
      const double scale = csr_max_abs(coarse.combined);
      CheckResult r;
      r.name = fmt("coarse-operator identity, level %.0f, alpha %g",
                   static_cast<double>(k), alpha);
      r.pass = worst <= 1e-12 * scale;
      r.detail = fmt("max deviation %.3e (tolerance %.3e)", worst, 1e-12 * scale);
      out.push_back(r);
    }
  }
  return out;
}

double preconditioned_lambda_max(const MultigridHierarchy& h, int k,
                                 int power_steps, std::uint64_t seed) {
  const int n = h.ops[k].n_dofs;
  std::vector<double> w = random_vector(seed, n);
  std::vector<double> aw(n), v(n), av(n);
  csr_matvec(h.ops[k].combined, w.data(), aw.data(), h.mode);
  double lambda = 0.0;
  for (int it = 0; it < power_steps; ++it) {
    apply_smoother(h.smoothers[k], aw, v, h.mode);  // v = M^{-1} A w
    csr_matvec(h.ops[k].combined, v.data(), av.data(), h.mode);
    lambda = dot(av, w) / dot(aw, w);
    const double nrm = std::sqrt(std::max(dot(av, v), 0.0));
    if (nrm == 0.0) break;
    for (int q = 0; q < n; ++q) {
      w[q] = v[q] / nrm;
      aw[q] = av[q] / nrm;
    }
  }
  return lambda;
}

std::vector<CheckResult> run_spectral_checks(const std::vector<int>& fine_levels,
                                             const std::vector<double>& alphas,
                                             int power_steps, ExecMode mode) {
  std::vector<CheckResult> out;
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const double eta =
        kind == SmootherKind::edge ? kMaxEtaEdge : kMaxEtaVertex;
    for (int k : fine_levels) {
      const GridHierarchy grid = build_hierarchy(k);
      for (double alpha : alphas) {
        const CycleParams params{kind, eta, 1};
        const MultigridHierarchy h =
            build_multigrid(grid, k, alpha, params, mode);
        const double lambda = preconditioned_lambda_max(h, k, power_steps);
        CheckResult r;
        r.name = smoother_name(kind) +
                 fmt(" damping bound, level %.0f, alpha %g",
                     static_cast<double>(k), alpha);
        r.pass = lambda <= 1.0 + 1e-8;
        r.detail = fmt("lambda_max %.12f", lambda);
        out.push_back(r);
      }
    }
  }
  return out;
}

}  // namespace mgcurl
