#pragma once

#include "mgcurl/csr.hpp"
#include "mgcurl/grid.hpp"

namespace mgcurl {

// Natural injection between nested edge spaces: entries are the fine edge
// DOFs of the coarse basis functions, evaluated as tangential midpoint
// values (exact for these spaces). `p` maps coarse coefficients to fine,
// `pt` is its transpose for residual restriction.
struct ProlongationOperator {
  int fine_level = 1;
  CsrMatrix p;
  CsrMatrix pt;
};

ProlongationOperator build_prolongation(const GridHierarchy& g, int fine_level,
                                        ExecMode mode = ExecMode::serial);

void prolongate(const ProlongationOperator& t, const std::vector<double>& coarse,
                std::vector<double>& fine, ExecMode mode = ExecMode::serial);
void restrict_functional(const ProlongationOperator& t,
                         const std::vector<double>& fine,
                         std::vector<double>& coarse,
                         ExecMode mode = ExecMode::serial);

}  // namespace mgcurl
