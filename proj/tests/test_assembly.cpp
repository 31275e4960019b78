#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "mgcurl/assembly.hpp"
#include "mgcurl/rng.hpp"

using namespace mgcurl;

namespace {

// Dense assembly by direct cell loops, the classic scatter order; the
// production code fills row by row instead.
void dense_oracle(const GridHierarchy& g, int level, Eigen::MatrixXd& K,
                  Eigen::MatrixXd& M) {
  const GridLevel& lvl = g.level(level);
  const int n = lvl.num_dofs();
  K = Eigen::MatrixXd::Zero(n, n);
  M = Eigen::MatrixXd::Zero(n, n);
  const BrickExtents b{lvl.h(), lvl.h(), lvl.h()};
  const auto kloc = local_curlcurl_matrix(b);
  const auto mloc = local_mass_matrix(b);
  for (int cell = 0; cell < lvl.num_cells(); ++cell) {
    const auto c = lvl.cell_coords(cell);
    const auto dofs = lvl.cell_dofs(c[0], c[1], c[2]);
    for (int i = 0; i < 12; ++i) {
      if (dofs[i].boundary()) continue;
      for (int j = 0; j < 12; ++j) {
        if (dofs[j].boundary()) continue;
        K(dofs[i].dof, dofs[j].dof) += kloc(i, j);
        M(dofs[i].dof, dofs[j].dof) += mloc(i, j);
      }
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("assembly");

TEST_CASE("sparse operator matches a dense cell-loop oracle") {
  const GridHierarchy g = build_hierarchy(1);
  for (int level : {0, 1}) {
    const double alpha = 0.37;
    const SystemOperator op = assemble_operator(g, level, alpha);
    Eigen::MatrixXd K, M;
    dense_oracle(g, level, K, M);
    const double ks = K.cwiseAbs().maxCoeff(), ms = M.cwiseAbs().maxCoeff();
    for (int i = 0; i < op.n_dofs; ++i)
      for (int j = 0; j < op.n_dofs; ++j) {
        CHECK(std::fabs(csr_get(op.stiffness, i, j) - K(i, j)) <= 1e-13 * ks);
        CHECK(std::fabs(csr_get(op.mass, i, j) - M(i, j)) <= 1e-13 * ms);
        CHECK(std::fabs(csr_get(op.combined, i, j) - alpha * K(i, j) - M(i, j)) <=
              1e-13 * (alpha * ks + ms));
      }
  }
}

TEST_CASE("combined operator is the exact linear combination") {
  const GridHierarchy g = build_hierarchy(2);
  const SystemOperator op = assemble_operator(g, 2, 42.5);
  for (std::size_t q = 0; q < op.combined.vals.size(); ++q)
    CHECK(op.combined.vals[q] == 42.5 * op.stiffness.vals[q] + op.mass.vals[q]);
}

TEST_CASE("operators are symmetric and positive definite") {
  const GridHierarchy g = build_hierarchy(1);
  const SystemOperator op = assemble_operator(g, 1, 0.01);
  const int n = op.n_dofs;
  double scale = csr_max_abs(op.combined);
  for (int i = 0; i < n; ++i)
    for (int q = op.combined.pattern->row_ptr[i];
         q < op.combined.pattern->row_ptr[i + 1]; ++q) {
      const int j = op.combined.pattern->col_idx[q];
      CHECK(std::fabs(op.combined.vals[q] - csr_get(op.combined, j, i)) <=
            1e-14 * scale);
    }
  const std::vector<double> x = random_vector(5, n);
  CHECK(a_inner(op, x, x) > 0.0);
  CHECK(l2_inner(op, x, x) > 0.0);
  const std::vector<double> y = random_vector(6, n);
  CHECK(a_inner(op, x, y) ==
        doctest::Approx(a_inner(op, y, x)).epsilon(1e-12));
}

TEST_CASE("serial and threaded assembly agree bitwise") {
  const GridHierarchy g = build_hierarchy(2);
  const SystemOperator s = assemble_operator(g, 2, 1.0, ExecMode::serial);
  const SystemOperator p = assemble_operator(g, 2, 1.0, ExecMode::openmp);
  REQUIRE(s.combined.vals.size() == p.combined.vals.size());
  CHECK(std::memcmp(s.combined.vals.data(), p.combined.vals.data(),
                    s.combined.vals.size() * sizeof(double)) == 0);
  CHECK(s.combined.pattern->col_idx == p.combined.pattern->col_idx);
}

TEST_CASE("constant loads integrate to the analytic edge moments") {
  // (f, phi_e) = f_d * h^3 per adjacent cell for a constant field f
  const GridHierarchy g = build_hierarchy(1);
  const GridLevel& lvl = g.level(1);
  const Vec3 f = {1.0, -2.0, 3.0};
  const auto rhs =
      assemble_load(g, 1, [&](const Vec3&) { return f; }, 2);
  const double h3 = lvl.h() * lvl.h() * lvl.h();
  for (int d = 0; d < lvl.num_dofs(); ++d) {
    const EdgeKey e = lvl.edge_of_dof(d);
    const double cells = static_cast<double>(lvl.cells_of_edge(e).size());
    CHECK(rhs[d] == doctest::Approx(f[e.dir] * cells * h3 / 4.0).epsilon(1e-13));
  }
  // quadrature order must not matter for polynomial data
  const auto rhs5 =
      assemble_load(g, 1, [&](const Vec3&) { return f; }, 5);
  for (int d = 0; d < lvl.num_dofs(); ++d)
    CHECK(rhs[d] == doctest::Approx(rhs5[d]).epsilon(1e-13));
}

TEST_CASE("apply and inner products validate dimensions") {
  const GridHierarchy g = build_hierarchy(1);
  const SystemOperator op = assemble_operator(g, 1, 1.0);
  std::vector<double> bad(op.n_dofs - 1), y;
  CHECK_THROWS_AS(apply_operator(op, bad, y), std::invalid_argument);
  std::vector<double> x(op.n_dofs, 1.0);
  CHECK_THROWS_AS((void)a_inner(op, x, bad), std::invalid_argument);
  CHECK_THROWS_AS((void)assemble_operator(g, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)assemble_operator(g, 7, 1.0), std::out_of_range);

  apply_operator(op, x, y);
  std::vector<double> ref(op.n_dofs);
  csr_matvec(op.combined, x.data(), ref.data(), ExecMode::serial);
  CHECK(y == ref);
}

TEST_SUITE_END();
