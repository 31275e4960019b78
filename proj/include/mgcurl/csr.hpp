#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mgcurl {

// Kernel dispatch: `serial` is the reference path used for acceptance and
// determinism checks, `openmp` the threaded path. Row-parallel kernels give
// bitwise-identical results in both modes; block-parallel ones reduce
// per-thread buffers in thread order.
enum class ExecMode { serial, openmp };

struct CsrPattern {
  int rows = 0, cols = 0;
  std::vector<int> row_ptr;  // rows+1
  std::vector<int> col_idx;  // sorted within each row
  int nnz() const { return static_cast<int>(col_idx.size()); }
};

// Several matrices on the same grid share one sparsity pattern.
struct CsrMatrix {
  std::shared_ptr<const CsrPattern> pattern;
  std::vector<double> vals;
  int rows() const { return pattern->rows; }
  int cols() const { return pattern->cols; }
};

// y = A x; row-parallel, bitwise identical across modes.
void csr_matvec(const CsrMatrix& a, const double* x, double* y, ExecMode mode);

// Entry lookup by binary search within the row; 0 for positions outside the
// pattern.
double csr_get(const CsrMatrix& a, int row, int col);
// Position of (row,col) in the value array, -1 if absent.
int csr_find(const CsrPattern& p, int row, int col);

// Max-norm of the values.
double csr_max_abs(const CsrMatrix& a);

// Text dump: one "rows cols nnz" header line, then 1-based "row col value"
// triplets with 17 significant digits, row-major.
void dump_matrix(const CsrMatrix& a, const std::string& path);

double dot(const std::vector<double>& x, const std::vector<double>& y);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);

}  // namespace mgcurl
