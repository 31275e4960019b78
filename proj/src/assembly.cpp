#include "mgcurl/assembly.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mgcurl {

namespace {

inline std::array<int, 2> transverse(int dir) {
  switch (dir) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

// Local index of an edge within a cell from its offsets relative to the cell
// origin; inverse of GridLevel::cell_dofs ordering.
inline int local_index_of(const EdgeKey& e, const std::array<int, 3>& cell) {
  const auto t = transverse(e.dir);
  const int pos[3] = {e.i, e.j, e.k};
  const int b1 = pos[t[0]] - cell[t[0]];
  const int b2 = pos[t[1]] - cell[t[1]];
  assert(b1 >= 0 && b1 <= 1 && b2 >= 0 && b2 <= 1);
  return 4 * e.dir + 2 * b1 + b2;
}

std::shared_ptr<const CsrPattern> build_pattern(const GridLevel& lvl,
                                                ExecMode mode) {
  auto pat = std::make_shared<CsrPattern>();
  pat->rows = pat->cols = lvl.num_dofs();
  pat->row_ptr.assign(lvl.num_dofs() + 1, 0);

  std::vector<std::vector<int>> row_cols(lvl.num_dofs());
  const auto fill_row = [&](int r) {
    const EdgeKey e = lvl.edge_of_dof(r);
    std::vector<int>& cols = row_cols[r];
    cols.reserve(36);
    for (const auto& c : lvl.cells_of_edge(e)) {
      for (const auto& ref : lvl.cell_dofs(c[0], c[1], c[2]))
        if (!ref.boundary()) cols.push_back(ref.dof);
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < pat->rows; ++r) fill_row(r);
  } else {
    for (int r = 0; r < pat->rows; ++r) fill_row(r);
  }

  for (int r = 0; r < pat->rows; ++r)
    pat->row_ptr[r + 1] = pat->row_ptr[r] + static_cast<int>(row_cols[r].size());
  pat->col_idx.resize(pat->row_ptr.back());
  for (int r = 0; r < pat->rows; ++r)
    std::copy(row_cols[r].begin(), row_cols[r].end(),
              pat->col_idx.begin() + pat->row_ptr[r]);
  return pat;
}

}  // namespace

SystemOperator assemble_operator(const GridHierarchy& g, int level, double alpha,
                                 ExecMode mode) {
  if (level < 0 || level > g.max_level())
    throw std::out_of_range("assembly level outside the hierarchy");
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  const GridLevel& lvl = g.level(level);

  SystemOperator op;
  op.level = level;
  op.alpha = alpha;
  op.n_dofs = lvl.num_dofs();

  auto pat = build_pattern(lvl, mode);
  op.stiffness.pattern = op.mass.pattern = op.combined.pattern = pat;
  op.stiffness.vals.assign(pat->nnz(), 0.0);
  op.mass.vals.assign(pat->nnz(), 0.0);
  op.combined.vals.assign(pat->nnz(), 0.0);

  const BrickExtents brick{lvl.h(), lvl.h(), lvl.h()};
  const Eigen::Matrix<double, 12, 12> kloc = local_curlcurl_matrix(brick);
  const Eigen::Matrix<double, 12, 12> mloc = local_mass_matrix(brick);

  // One row at a time: visit the cells around the row edge in enumeration
  // order and add their couplings. Accumulation order per row is fixed, so
  // serial and threaded fills agree bitwise.
  const auto fill_row = [&](int r) {
    const EdgeKey e = lvl.edge_of_dof(r);
    for (const auto& c : lvl.cells_of_edge(e)) {
      const int le = local_index_of(e, c);
      const auto dofs = lvl.cell_dofs(c[0], c[1], c[2]);
      for (int lo = 0; lo < 12; ++lo) {
        if (dofs[lo].boundary()) continue;
        const int q = csr_find(*pat, r, dofs[lo].dof);
        assert(q >= 0);
        op.stiffness.vals[q] += kloc(le, lo);
        op.mass.vals[q] += mloc(le, lo);
      }
    }
    for (int q = pat->row_ptr[r]; q < pat->row_ptr[r + 1]; ++q)
      op.combined.vals[q] = alpha * op.stiffness.vals[q] + op.mass.vals[q];
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < op.n_dofs; ++r) fill_row(r);
  } else {
    for (int r = 0; r < op.n_dofs; ++r) fill_row(r);
  }
  return op;
}

std::vector<double> assemble_load(const GridHierarchy& g, int level,
                                  const std::function<Vec3(const Vec3&)>& f,
                                  int quad_order, ExecMode mode) {
  if (level < 0 || level > g.max_level())
    throw std::out_of_range("assembly level outside the hierarchy");
  if (quad_order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  const GridLevel& lvl = g.level(level);
  const double h = lvl.h();
  const BrickExtents brick{h, h, h};
  const QuadratureRule q = gauss_legendre_01(quad_order);

  std::vector<double> rhs(lvl.num_dofs(), 0.0);
  const auto fill_row = [&](int r) {
    const EdgeKey e = lvl.edge_of_dof(r);
    double acc = 0.0;
    for (const auto& c : lvl.cells_of_edge(e)) {
      const int le = local_index_of(e, c);
      const Vec3 origin = {lvl.coord(c[0]), lvl.coord(c[1]), lvl.coord(c[2])};
      for (std::size_t ix = 0; ix < q.points.size(); ++ix)
        for (std::size_t iy = 0; iy < q.points.size(); ++iy)
          for (std::size_t iz = 0; iz < q.points.size(); ++iz) {
            const Vec3 local = {q.points[ix] * h, q.points[iy] * h,
                                q.points[iz] * h};
            const Vec3 global = {origin[0] + local[0], origin[1] + local[1],
                                 origin[2] + local[2]};
            const double w =
                q.weights[ix] * q.weights[iy] * q.weights[iz] * h * h * h;
            const Vec3 fv = f(global);
            const Vec3 sv = shape_eval(brick, le, local);
            acc += w * (fv[0] * sv[0] + fv[1] * sv[1] + fv[2] * sv[2]);
          }
    }
    rhs[r] = acc;
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < lvl.num_dofs(); ++r) fill_row(r);
  } else {
    for (int r = 0; r < lvl.num_dofs(); ++r) fill_row(r);
  }
  return rhs;
}

void apply_operator(const SystemOperator& op, const std::vector<double>& x,
                    std::vector<double>& y, ExecMode mode) {
  if (static_cast<int>(x.size()) != op.n_dofs)
    throw std::invalid_argument("operator/vector dimension mismatch");
  y.resize(op.n_dofs);
  csr_matvec(op.combined, x.data(), y.data(), mode);
}

double a_inner(const SystemOperator& op, const std::vector<double>& x,
               const std::vector<double>& y, ExecMode mode) {
  if (x.size() != y.size() || static_cast<int>(x.size()) != op.n_dofs)
    throw std::invalid_argument("operator/vector dimension mismatch");
  std::vector<double> tmp(op.n_dofs);
  csr_matvec(op.combined, y.data(), tmp.data(), mode);
  return dot(x, tmp);
}

double l2_inner(const SystemOperator& op, const std::vector<double>& x,
                const std::vector<double>& y, ExecMode mode) {
  if (x.size() != y.size() || static_cast<int>(x.size()) != op.n_dofs)
    throw std::invalid_argument("operator/vector dimension mismatch");
  std::vector<double> tmp(op.n_dofs);
  csr_matvec(op.mass, y.data(), tmp.data(), mode);
  return dot(x, tmp);
}

}  // namespace mgcurl
