#include "mgcurl/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mgcurl {

void csr_matvec(const CsrMatrix& a, const double* x, double* y, ExecMode mode) {
  const CsrPattern& p = *a.pattern;
  const int* rp = p.row_ptr.data();
  const int* ci = p.col_idx.data();
  const double* v = a.vals.data();
  if (mode == ExecMode::openmp) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < p.rows; ++r) {
      double acc = 0.0;
      for (int q = rp[r]; q < rp[r + 1]; ++q) acc += v[q] * x[ci[q]];
      y[r] = acc;
    }
  } else {
    for (int r = 0; r < p.rows; ++r) {
      double acc = 0.0;
      for (int q = rp[r]; q < rp[r + 1]; ++q) acc += v[q] * x[ci[q]];
      y[r] = acc;
    }
  }
}

int csr_find(const CsrPattern& p, int row, int col) {
  const auto b = p.col_idx.begin() + p.row_ptr[row];
  const auto e = p.col_idx.begin() + p.row_ptr[row + 1];
  const auto it = std::lower_bound(b, e, col);
  if (it == e || *it != col) return -1;
  return static_cast<int>(it - p.col_idx.begin());
}

double csr_get(const CsrMatrix& a, int row, int col) {
  const int q = csr_find(*a.pattern, row, col);
  return q < 0 ? 0.0 : a.vals[q];
}

double csr_max_abs(const CsrMatrix& a) {
  double m = 0.0;
  for (double v : a.vals) m = std::max(m, std::abs(v));
  return m;
}

void dump_matrix(const CsrMatrix& a, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  const CsrPattern& p = *a.pattern;
  std::fprintf(f, "%d %d %d\n", p.rows, p.cols, p.nnz());
  for (int r = 0; r < p.rows; ++r)
    for (int q = p.row_ptr[r]; q < p.row_ptr[r + 1]; ++q)
      std::fprintf(f, "%d %d %.17g\n", r + 1, p.col_idx[q] + 1, a.vals[q]);
  std::fclose(f);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace mgcurl
