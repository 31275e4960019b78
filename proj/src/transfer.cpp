#include "mgcurl/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgcurl/element.hpp"

namespace mgcurl {

ProlongationOperator build_prolongation(const GridHierarchy& g, int fine_level,
                                        ExecMode mode) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  const GridLevel& fine = g.level(fine_level);
  const GridLevel& coarse = g.level(fine_level - 1);
  const double hc = coarse.h();
  const BrickExtents brick{hc, hc, hc};

  ProlongationOperator t;
  t.fine_level = fine_level;

  // Row r: tangential value of each same-direction coarse basis function at
  // the fine edge midpoint, taken in one coarse cell containing the midpoint
  // (the tangential component is single-valued across its faces).
  std::vector<std::vector<std::pair<int, double>>> rows(fine.num_dofs());
  const auto fill_row = [&](int r) {
    const EdgeKey e = fine.edge_of_dof(r);
    const auto mid = fine.edge_midpoint(e);
    std::array<int, 3> cc{};
    const int pos[3] = {e.i, e.j, e.k};
    for (int a = 0; a < 3; ++a) {
      if (a == e.dir) {
        cc[a] = pos[a] / 2;
      } else {
        cc[a] = (pos[a] % 2 == 0) ? pos[a] / 2 : (pos[a] - 1) / 2;
        cc[a] = std::min(cc[a], coarse.n() - 1);
      }
    }
    const Vec3 local = {mid[0] - coarse.coord(cc[0]), mid[1] - coarse.coord(cc[1]),
                        mid[2] - coarse.coord(cc[2])};
    const auto dofs = coarse.cell_dofs(cc[0], cc[1], cc[2]);
    auto& row = rows[r];
    for (int l = 4 * e.dir; l < 4 * e.dir + 4; ++l) {
      if (dofs[l].boundary()) continue;
      const double w = shape_eval(brick, l, local)[e.dir];
      if (w != 0.0) row.emplace_back(dofs[l].dof, w);
    }
    std::sort(row.begin(), row.end());
  };
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < fine.num_dofs(); ++r) fill_row(r);
  } else {
    for (int r = 0; r < fine.num_dofs(); ++r) fill_row(r);
  }

  auto pat = std::make_shared<CsrPattern>();
  pat->rows = fine.num_dofs();
  pat->cols = coarse.num_dofs();
  pat->row_ptr.assign(pat->rows + 1, 0);
  for (int r = 0; r < pat->rows; ++r)
    pat->row_ptr[r + 1] = pat->row_ptr[r] + static_cast<int>(rows[r].size());
  pat->col_idx.resize(pat->row_ptr.back());
  t.p.vals.resize(pat->row_ptr.back());
  for (int r = 0; r < pat->rows; ++r) {
    int q = pat->row_ptr[r];
    for (const auto& [c, w] : rows[r]) {
      pat->col_idx[q] = c;
      t.p.vals[q] = w;
      ++q;
    }
  }
  t.p.pattern = pat;

  // Transpose (CSR of P^T) so restriction is a row-parallel matvec too.
  auto tpat = std::make_shared<CsrPattern>();
  tpat->rows = pat->cols;
  tpat->cols = pat->rows;
  tpat->row_ptr.assign(tpat->rows + 1, 0);
  for (int c : pat->col_idx) tpat->row_ptr[c + 1]++;
  for (int r = 0; r < tpat->rows; ++r) tpat->row_ptr[r + 1] += tpat->row_ptr[r];
  tpat->col_idx.resize(pat->col_idx.size());
  t.pt.vals.resize(pat->col_idx.size());
  std::vector<int> cursor(tpat->row_ptr.begin(), tpat->row_ptr.end() - 1);
  for (int r = 0; r < pat->rows; ++r)
    for (int q = pat->row_ptr[r]; q < pat->row_ptr[r + 1]; ++q) {
      const int c = pat->col_idx[q];
      tpat->col_idx[cursor[c]] = r;
      t.pt.vals[cursor[c]] = t.p.vals[q];
      ++cursor[c];
    }
  t.pt.pattern = tpat;
  return t;
}

void prolongate(const ProlongationOperator& t, const std::vector<double>& coarse,
                std::vector<double>& fine, ExecMode mode) {
  if (static_cast<int>(coarse.size()) != t.p.cols())
    throw std::invalid_argument("coarse vector dimension mismatch");
  fine.resize(t.p.rows());
  csr_matvec(t.p, coarse.data(), fine.data(), mode);
}

void restrict_functional(const ProlongationOperator& t,
                         const std::vector<double>& fine,
                         std::vector<double>& coarse, ExecMode mode) {
  if (static_cast<int>(fine.size()) != t.pt.cols())
    throw std::invalid_argument("fine vector dimension mismatch");
  coarse.resize(t.pt.rows());
  csr_matvec(t.pt, fine.data(), coarse.data(), mode);
}

}  // namespace mgcurl
