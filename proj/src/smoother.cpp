#include "mgcurl/smoother.hpp"

#include <omp.h>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mgcurl {

namespace {

Eigen::MatrixXd gather_dense(const CsrMatrix& a, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(i, j) = csr_get(a, rows[i], cols[j]);
  return out;
}

BlockTemplate make_template(const CsrMatrix& a, const CoarseEntityStencil& s) {
  const Eigen::MatrixXd aii = gather_dense(a, s.interior, s.interior);
  const Eigen::MatrixXd ais = gather_dense(a, s.interior, s.skeleton);
  const Eigen::MatrixXd ass = gather_dense(a, s.skeleton, s.skeleton);
  BlockTemplate t;
  t.interior_chol.compute(aii);
  if (t.interior_chol.info() != Eigen::Success)
    throw std::runtime_error("interior block factorization failed");
  t.extension = -t.interior_chol.solve(ais);
  const Eigen::MatrixXd schur = ass + ais.transpose() * t.extension;
  t.schur_chol.compute(schur);
  if (t.schur_chol.info() != Eigen::Success)
    throw std::runtime_error("Schur complement factorization failed");
  return t;
}

// One entity correction: t = r_S + X' r_I, y = S^{-1} t, add (y, X y).
void entity_correction(const BlockTemplate& t, const EntityBlock& e,
                       const double* r, double* acc) {
  const int ni = static_cast<int>(e.interior.size());
  const int ns = static_cast<int>(e.skeleton.size());
  Eigen::VectorXd ri(ni), rhs(ns);
  for (int q = 0; q < ni; ++q) ri[q] = r[e.interior[q]];
  for (int q = 0; q < ns; ++q) rhs[q] = r[e.skeleton[q]];
  rhs.noalias() += t.extension.transpose() * ri;
  const Eigen::VectorXd y = t.schur_chol.solve(rhs);
  const Eigen::VectorXd yi = t.extension * y;
  for (int q = 0; q < ns; ++q) acc[e.skeleton[q]] += y[q];
  for (int q = 0; q < ni; ++q) acc[e.interior[q]] += yi[q];
}

void cell_correction(const SmootherBlocks& b, int cell, const double* r,
                     double* acc) {
  const auto& dofs = b.cell_dofs[cell];
  Eigen::Matrix<double, 6, 1> rc;
  for (int q = 0; q < 6; ++q) rc[q] = r[dofs[q]];
  const Eigen::Matrix<double, 6, 1> y = b.cell_chol.solve(rc);
  for (int q = 0; q < 6; ++q) acc[dofs[q]] += y[q];
}

}  // namespace

SmootherBlocks build_blocks(const GridHierarchy& g, const SystemOperator& fine_op,
                            int fine_level, SmootherKind kind, double eta,
                            bool unsafe_damping) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  if (fine_op.level != fine_level)
    throw std::invalid_argument("operator assembled on a different level");
  if (eta <= 0.0) throw std::invalid_argument("eta must be positive");
  const double bound =
      kind == SmootherKind::edge ? kMaxEtaEdge : kMaxEtaVertex;
  if (eta > bound * (1.0 + 1e-12) && !unsafe_damping)
    throw std::invalid_argument("eta exceeds the safe damping bound");

  const GridLevel& coarse = g.level(fine_level - 1);
  SmootherBlocks b;
  b.kind = kind;
  b.eta = eta;
  b.fine_level = fine_level;
  b.n_dofs = fine_op.n_dofs;

  // Cell interior blocks: the grid is uniform, so one factorization serves
  // every cell; instances keep only their gather lists.
  b.cell_dofs.reserve(coarse.num_cells());
  for (int c = 0; c < coarse.num_cells(); ++c) {
    const CoarseEntityStencil s = cell_stencil(g, fine_level, coarse.cell_coords(c));
    std::array<int, 6> dofs;
    std::copy(s.interior.begin(), s.interior.end(), dofs.begin());
    b.cell_dofs.push_back(dofs);
  }
  {
    const CoarseEntityStencil s = cell_stencil(g, fine_level, {0, 0, 0});
    std::vector<int> idx(s.interior.begin(), s.interior.end());
    b.cell_chol.compute(gather_dense(fine_op.combined, idx, idx));
    if (b.cell_chol.info() != Eigen::Success)
      throw std::runtime_error("cell block factorization failed");
  }

  // Entity blocks share one template per congruence class: the three edge
  // directions, or the single vertex class.
  if (kind == SmootherKind::edge) {
    b.templates.resize(3);
    bool have[3] = {false, false, false};
    for (const auto& e : coarse.interior_edges()) {
      const CoarseEntityStencil s = edge_stencil(g, fine_level, e);
      if (!have[e.dir]) {
        b.templates[e.dir] = make_template(fine_op.combined, s);
        have[e.dir] = true;
      }
      b.entities.push_back({s.interior, s.skeleton, e.dir});
    }
  } else {
    b.templates.resize(1);
    bool have = false;
    const int nc = coarse.n();
    for (int i = 1; i < nc; ++i)
      for (int j = 1; j < nc; ++j)
        for (int k = 1; k < nc; ++k) {
          const CoarseEntityStencil s = vertex_stencil(g, fine_level, {i, j, k});
          if (!have) {
            b.templates[0] = make_template(fine_op.combined, s);
            have = true;
          }
          b.entities.push_back({s.interior, s.skeleton, 0});
        }
  }
  return b;
}

void apply_smoother(const SmootherBlocks& b, const std::vector<double>& r,
                    std::vector<double>& c, ExecMode mode) {
  if (static_cast<int>(r.size()) != b.n_dofs)
    throw std::invalid_argument("residual dimension mismatch");
  c.assign(b.n_dofs, 0.0);
  const int ncells = static_cast<int>(b.cell_dofs.size());
  const int nent = static_cast<int>(b.entities.size());

  if (mode == ExecMode::serial) {
    for (int i = 0; i < ncells; ++i) cell_correction(b, i, r.data(), c.data());
    for (int i = 0; i < nent; ++i)
      entity_correction(b.templates[b.entities[i].tmpl], b.entities[i], r.data(),
                        c.data());
    for (double& v : c) v *= b.eta;
    return;
  }

  // Blocks overlap, so threads accumulate into private buffers which are then
  // reduced in thread order; the result is independent of scheduling for a
  // fixed thread count.
  const int nthreads = omp_get_max_threads();
  std::vector<std::vector<double>> buf(nthreads);
#pragma omp parallel
  {
    const int tid = omp_get_thread_num();
    buf[tid].assign(b.n_dofs, 0.0);
#pragma omp for schedule(static) nowait
    for (int i = 0; i < ncells; ++i) cell_correction(b, i, r.data(), buf[tid].data());
#pragma omp for schedule(static)
    for (int i = 0; i < nent; ++i)
      entity_correction(b.templates[b.entities[i].tmpl], b.entities[i], r.data(),
                        buf[tid].data());
#pragma omp barrier
#pragma omp for schedule(static)
    for (int q = 0; q < b.n_dofs; ++q) {
      double acc = 0.0;
      for (int t = 0; t < nthreads; ++t) acc += buf[t][q];
      c[q] = acc * b.eta;
    }
  }
}

LocalField harmonic_extension(const SmootherBlocks& b, int entity_id,
                              const Eigen::VectorXd& skeleton_values) {
  if (entity_id < 0 || entity_id >= static_cast<int>(b.entities.size()))
    throw std::out_of_range("entity id out of range");
  const EntityBlock& e = b.entities[entity_id];
  if (skeleton_values.size() != static_cast<Eigen::Index>(e.skeleton.size()))
    throw std::invalid_argument("skeleton value dimension mismatch");
  LocalField f;
  f.skeleton = skeleton_values;
  f.interior = b.templates[e.tmpl].extension * skeleton_values;
  return f;
}

double lemma_coarse_check(const GridHierarchy& g, const SystemOperator& fine_op,
                          int fine_level, const EdgeKey& coarse_edge) {
  if (coarse_edge.dir != 0)
    throw std::invalid_argument("check is defined for x-parallel coarse edges");
  if (fine_op.level != fine_level)
    throw std::invalid_argument("operator assembled on a different level");
  const CoarseEntityStencil s = edge_stencil(g, fine_level, coarse_edge);
  const GridLevel& fine = g.level(fine_level);

  // +-1 tangential pattern on the six fine edges meeting the midpoint of the
  // coarse edge: the edge ending there gets -1, the edge starting there +1,
  // per direction.
  const int vx = 2 * coarse_edge.i + 1, vy = 2 * coarse_edge.j,
            vz = 2 * coarse_edge.k;
  const std::array<std::pair<EdgeKey, double>, 6> pattern = {{
      {{0, vx - 1, vy, vz}, -1.0},
      {{0, vx, vy, vz}, 1.0},
      {{1, vx, vy - 1, vz}, -1.0},
      {{1, vx, vy, vz}, 1.0},
      {{2, vx, vy, vz - 1}, -1.0},
      {{2, vx, vy, vz}, 1.0},
  }};

  Eigen::VectorXd us = Eigen::VectorXd::Zero(s.skeleton.size());
  for (const auto& [key, val] : pattern) {
    const int dof = fine.dof_of(key);
    const auto it = std::find(s.skeleton.begin(), s.skeleton.end(), dof);
    assert(it != s.skeleton.end());
    us[it - s.skeleton.begin()] = val;
  }

  // L2-minimal interior extension, then the curl seminorm of the patch field.
  const Eigen::MatrixXd mii = gather_dense(fine_op.mass, s.interior, s.interior);
  const Eigen::MatrixXd mis = gather_dense(fine_op.mass, s.interior, s.skeleton);
  const Eigen::VectorXd ui = -Eigen::LLT<Eigen::MatrixXd>(mii).solve(mis * us);

  std::vector<int> patch(s.interior);
  patch.insert(patch.end(), s.skeleton.begin(), s.skeleton.end());
  Eigen::VectorXd u(patch.size());
  u << ui, us;
  const Eigen::MatrixXd kp = gather_dense(fine_op.stiffness, patch, patch);
  const double energy = u.dot(kp * u);
  return std::sqrt(std::max(0.0, energy));
}

}  // namespace mgcurl
