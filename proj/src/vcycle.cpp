#include "mgcurl/vcycle.hpp"

#include <cmath>
#include <stdexcept>

namespace mgcurl {

MultigridHierarchy build_multigrid(const GridHierarchy& g, int top_level,
                                   double alpha, const CycleParams& params,
                                   ExecMode mode) {
  if (top_level < 0 || top_level > g.max_level())
    throw std::out_of_range("top level outside the grid hierarchy");
  if (params.m < 1) throw std::invalid_argument("smoothing steps must be >= 1");
  MultigridHierarchy h;
  h.grid = &g;
  h.top_level = top_level;
  h.params = params;
  h.mode = mode;
  h.ops.reserve(top_level + 1);
  for (int l = 0; l <= top_level; ++l)
    h.ops.push_back(assemble_operator(g, l, alpha, mode));
  h.transfers.resize(top_level + 1);
  h.smoothers.resize(top_level + 1);
  for (int k = 1; k <= top_level; ++k) {
    h.transfers[k] = build_prolongation(g, k, mode);
    h.smoothers[k] = build_blocks(g, h.ops[k], k, params.kind, params.eta,
                                  params.unsafe_damping);
  }
  const int n0 = h.ops[0].n_dofs;
  Eigen::MatrixXd a0(n0, n0);
  for (int r = 0; r < n0; ++r)
    for (int c = 0; c < n0; ++c) a0(r, c) = csr_get(h.ops[0].combined, r, c);
  h.coarse_chol.compute(a0);
  if (h.coarse_chol.info() != Eigen::Success)
    throw std::runtime_error("coarsest-level factorization failed");
  return h;
}

void Workspace::prepare(const MultigridHierarchy& h) {
  const std::size_t nl = h.ops.size();
  z.resize(nl);
  r.resize(nl);
  g.resize(nl);
  c.resize(nl);
  for (std::size_t l = 0; l < nl; ++l) {
    z[l].resize(h.ops[l].n_dofs);
    r[l].resize(h.ops[l].n_dofs);
    g[l].resize(h.ops[l].n_dofs);
    c[l].resize(h.ops[l].n_dofs);
  }
}

namespace {

// z += eta * M^{-1} (g - A z), in place on ws buffers.
void smooth_step(const MultigridHierarchy& h, int k, const std::vector<double>& g,
                 std::vector<double>& z, std::vector<double>& r,
                 std::vector<double>& c) {
  csr_matvec(h.ops[k].combined, z.data(), r.data(), h.mode);
  for (std::size_t q = 0; q < r.size(); ++q) r[q] = g[q] - r[q];
  apply_smoother(h.smoothers[k], r, c, h.mode);
  for (std::size_t q = 0; q < z.size(); ++q) z[q] += c[q];
}

void mg_recurse(const MultigridHierarchy& h, int k, const std::vector<double>& g,
                int m, std::vector<double>& z, Workspace& ws) {
  if (k == 0) {
    const int n0 = h.ops[0].n_dofs;
    Eigen::Map<const Eigen::VectorXd> gm(g.data(), n0);
    Eigen::VectorXd sol = h.coarse_chol.solve(gm);
    z.assign(sol.data(), sol.data() + n0);
    return;
  }
  std::vector<double>& r = ws.r[k];
  std::vector<double>& c = ws.c[k];
  for (int s = 0; s < m; ++s) smooth_step(h, k, g, z, r, c);

  csr_matvec(h.ops[k].combined, z.data(), r.data(), h.mode);
  for (std::size_t q = 0; q < r.size(); ++q) r[q] = g[q] - r[q];
  restrict_functional(h.transfers[k], r, ws.g[k - 1], h.mode);
  ws.z[k - 1].assign(h.ops[k - 1].n_dofs, 0.0);
  mg_recurse(h, k - 1, ws.g[k - 1], m, ws.z[k - 1], ws);
  prolongate(h.transfers[k], ws.z[k - 1], c, h.mode);
  for (std::size_t q = 0; q < z.size(); ++q) z[q] += c[q];

  for (int s = 0; s < m; ++s) smooth_step(h, k, g, z, r, c);
}

}  // namespace

void mg_apply(const MultigridHierarchy& h, int k, const std::vector<double>& g,
              const std::vector<double>& z0, int m, std::vector<double>& z,
              Workspace& ws) {
  if (k < 0 || k > h.top_level)
    throw std::out_of_range("cycle level outside the hierarchy");
  if (m < 1) throw std::invalid_argument("smoothing steps must be >= 1");
  if (static_cast<int>(g.size()) != h.ops[k].n_dofs ||
      static_cast<int>(z0.size()) != h.ops[k].n_dofs)
    throw std::invalid_argument("vector dimension mismatch");
  ws.prepare(h);
  z = z0;
  mg_recurse(h, k, g, m, z, ws);
}

std::vector<double> mg_apply(const MultigridHierarchy& h, int k,
                             const std::vector<double>& g,
                             const std::vector<double>& z0, int m) {
  Workspace ws;
  std::vector<double> z;
  mg_apply(h, k, g, z0, m, z, ws);
  return z;
}

void error_propagation_apply(const MultigridHierarchy& h, int k,
                             const std::vector<double>& w, int m,
                             std::vector<double>& out, Workspace& ws) {
  if (k < 0 || k > h.top_level)
    throw std::out_of_range("cycle level outside the hierarchy");
  const int n = h.ops[k].n_dofs;
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("vector dimension mismatch");
  if (k == 0) {
    out.assign(n, 0.0);  // exact coarse solve: E_0 = 0
    return;
  }
  ws.prepare(h);
  std::vector<double> aw(n);
  csr_matvec(h.ops[k].combined, w.data(), aw.data(), h.mode);
  std::vector<double> z(n, 0.0);
  mg_recurse(h, k, aw, m, z, ws);
  out.resize(n);
  for (int q = 0; q < n; ++q) out[q] = w[q] - z[q];
}

PcgResult pcg_solve(const MultigridHierarchy& h, const std::vector<double>& f,
                    double rel_tol, int max_iters) {
  const int k = h.top_level;
  const int n = h.ops[k].n_dofs;
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("vector dimension mismatch");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");

  PcgResult res;
  res.x.assign(n, 0.0);
  Workspace ws;
  ws.prepare(h);
  const std::vector<double> zero(n, 0.0);

  std::vector<double> r = f, z(n), p(n), ap(n);
  z.assign(n, 0.0);
  mg_recurse(h, k, r, h.params.m, z, ws);
  double rz = dot(r, z);
  const double rz0 = rz;
  if (rz0 <= 0.0 || rel_tol >= 1.0) {
    res.converged = true;  // zero load or trivial tolerance
    return res;
  }
  p = z;
  for (int it = 1; it <= max_iters; ++it) {
    csr_matvec(h.ops[k].combined, p.data(), ap.data(), h.mode);
    const double pap = dot(p, ap);
    const double step = rz / pap;
    axpy(step, p, res.x);
    axpy(-step, ap, r);
    z.assign(n, 0.0);
    mg_recurse(h, k, r, h.params.m, z, ws);
    const double rz_new = dot(r, z);
    res.iterations = it;
    if (std::sqrt(std::max(0.0, rz_new) / rz0) <= rel_tol) {
      res.converged = true;
      return res;
    }
    const double beta = rz_new / rz;
    for (int q = 0; q < n; ++q) p[q] = z[q] + beta * p[q];
    rz = rz_new;
  }
  return res;
}

}  // namespace mgcurl
