#pragma once

#include <functional>
#include <vector>

#include "mgcurl/csr.hpp"
#include "mgcurl/element.hpp"
#include "mgcurl/grid.hpp"

namespace mgcurl {

// Discrete operator of curl(alpha curl u) + u on one level, with boundary
// (tangential) DOFs eliminated. `stiffness` is the curl-curl part, `mass` the
// L2 part; `combined` = alpha*stiffness + mass. All three share one pattern.
struct SystemOperator {
  int level = 0;
  double alpha = 1.0;
  int n_dofs = 0;
  CsrMatrix stiffness;
  CsrMatrix mass;
  CsrMatrix combined;
};

// Row-wise assembly: each row accumulates its cell contributions in a fixed
// order, so results are bitwise identical in serial and parallel mode.
SystemOperator assemble_operator(const GridHierarchy& g, int level, double alpha,
                                 ExecMode mode = ExecMode::serial);

// Load functional (f, basis) with per-cell tensor Gauss quadrature of the
// given 1D order.
std::vector<double> assemble_load(const GridHierarchy& g, int level,
                                  const std::function<Vec3(const Vec3&)>& f,
                                  int quad_order = 4,
                                  ExecMode mode = ExecMode::serial);

void apply_operator(const SystemOperator& op, const std::vector<double>& x,
                    std::vector<double>& y, ExecMode mode = ExecMode::serial);

// x' (alpha K + M) y and x' M y.
double a_inner(const SystemOperator& op, const std::vector<double>& x,
               const std::vector<double>& y, ExecMode mode = ExecMode::serial);
double l2_inner(const SystemOperator& op, const std::vector<double>& x,
                const std::vector<double>& y, ExecMode mode = ExecMode::serial);

}  // namespace mgcurl
