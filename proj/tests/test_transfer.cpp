#include <doctest.h>

#include <cmath>

#include "mgcurl/assembly.hpp"
#include "mgcurl/rng.hpp"
#include "mgcurl/transfer.hpp"

using namespace mgcurl;

namespace {

// Evaluate the discrete field of a coefficient vector at a physical point,
// going through the cell that contains it.
Vec3 eval_field(const GridLevel& lvl, const std::vector<double>& x, const Vec3& p) {
  std::array<int, 3> c{};
  for (int a = 0; a < 3; ++a) {
    c[a] = static_cast<int>((p[a] + 1.0) / lvl.h());
    if (c[a] >= lvl.n()) c[a] = lvl.n() - 1;
  }
  const auto dofs = lvl.cell_dofs(c[0], c[1], c[2]);
  double coeffs[12];
  for (int l = 0; l < 12; ++l)
    coeffs[l] = dofs[l].boundary() ? 0.0 : x[dofs[l].dof];
  const Vec3 local = {p[0] - lvl.coord(c[0]), p[1] - lvl.coord(c[1]),
                      p[2] - lvl.coord(c[2])};
  const BrickExtents b{lvl.h(), lvl.h(), lvl.h()};
  return local_field_eval(b, coeffs, local);
}

}  // namespace

TEST_SUITE_BEGIN("transfer");

TEST_CASE("prolongation reproduces the coarse field exactly") {
  const GridHierarchy g = build_hierarchy(2);
  for (int fl : {1, 2}) {
    const GridLevel& coarse = g.level(fl - 1);
    const GridLevel& fine = g.level(fl);
    const ProlongationOperator t = build_prolongation(g, fl);
    const std::vector<double> c = random_vector(17 + fl, coarse.num_dofs());
    std::vector<double> f;
    prolongate(t, c, f);
    REQUIRE(static_cast<int>(f.size()) == fine.num_dofs());

    // The coarse space is contained in the fine one, so the two coefficient
    // vectors describe the same function and agree at every point.
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec3 p = {-1.0 + 2.0 * rng.uniform(), -1.0 + 2.0 * rng.uniform(),
                      -1.0 + 2.0 * rng.uniform()};
      const Vec3 vc = eval_field(coarse, c, p);
      const Vec3 vf = eval_field(fine, f, p);
      for (int a = 0; a < 3; ++a) CHECK(std::fabs(vf[a] - vc[a]) <= 1e-12);
    }
  }
}

TEST_CASE("interior rows are convex weights summing to one") {
  const GridHierarchy g = build_hierarchy(2);
  const GridLevel& fine = g.level(2);
  const ProlongationOperator t = build_prolongation(g, 2);
  const auto& pat = *t.p.pattern;
  int full_rows = 0;
  for (int r = 0; r < pat.rows; ++r) {
    const EdgeKey e = fine.edge_of_dof(r);
    const int pos[3] = {e.i, e.j, e.k};
    bool deep = true;  // all four same-direction coarse parents interior
    for (int a = 0; a < 3; ++a) {
      if (a == e.dir) continue;
      if (pos[a] <= 2 || pos[a] >= fine.n() - 2) deep = false;
    }
    if (!deep) continue;
    ++full_rows;
    double sum = 0.0;
    for (int q = pat.row_ptr[r]; q < pat.row_ptr[r + 1]; ++q) {
      CHECK(t.p.vals[q] > 0.0);
      CHECK(t.p.vals[q] <= 1.0 + 1e-14);
      sum += t.p.vals[q];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(full_rows > 0);
}

TEST_CASE("canonical weights: child edges 1, transverse neighbors 1/2 and 1/4") {
  const GridHierarchy g = build_hierarchy(1);
  const GridLevel& coarse = g.level(0);
  const GridLevel& fine = g.level(1);
  const ProlongationOperator t = build_prolongation(g, 1);
  const int parent = coarse.dof_of(EdgeKey{0, 0, 1, 1});
  REQUIRE(parent >= 0);
  for (const auto& sub : GridHierarchy::child_edges(EdgeKey{0, 0, 1, 1}))
    CHECK(csr_get(t.p, fine.dof_of(sub), parent) == doctest::Approx(1.0));
  // offset by half a coarse cell in one transverse direction
  CHECK(csr_get(t.p, fine.dof_of(EdgeKey{0, 0, 1, 2}), parent) ==
        doctest::Approx(0.5));
  CHECK(csr_get(t.p, fine.dof_of(EdgeKey{0, 0, 2, 1}), parent) ==
        doctest::Approx(0.5));
  // offset in both
  CHECK(csr_get(t.p, fine.dof_of(EdgeKey{0, 1, 1, 1}), parent) ==
        doctest::Approx(0.25));
}

TEST_CASE("restriction is the exact adjoint") {
  const GridHierarchy g = build_hierarchy(2);
  const ProlongationOperator t = build_prolongation(g, 2);
  const std::vector<double> c = random_vector(1, t.p.cols());
  const std::vector<double> f = random_vector(2, t.p.rows());
  std::vector<double> pc, ptf;
  prolongate(t, c, pc);
  restrict_functional(t, f, ptf);
  CHECK(dot(pc, f) == doctest::Approx(dot(c, ptf)).epsilon(1e-13));

  for (int r = 0; r < t.p.rows(); r += 37)
    for (int q = t.p.pattern->row_ptr[r]; q < t.p.pattern->row_ptr[r + 1]; ++q)
      CHECK(t.p.vals[q] == csr_get(t.pt, t.p.pattern->col_idx[q], r));
}

TEST_CASE("transferred operators satisfy the variational identity") {
  const GridHierarchy g = build_hierarchy(2);
  for (double alpha : {0.01, 1.0, 100.0}) {
    const SystemOperator fine = assemble_operator(g, 1, alpha);
    const SystemOperator coarse = assemble_operator(g, 0, alpha);
    const ProlongationOperator t = build_prolongation(g, 1);
    const int nc = coarse.n_dofs;
    std::vector<double> ei(nc, 0.0), pf, apf(fine.n_dofs), col;
    double worst = 0.0;
    for (int i = 0; i < nc; ++i) {
      ei[i] = 1.0;
      prolongate(t, ei, pf);
      csr_matvec(fine.combined, pf.data(), apf.data(), ExecMode::serial);
      restrict_functional(t, apf, col);
      ei[i] = 0.0;
      for (int j = 0; j < nc; ++j)
        worst = std::max(worst,
                         std::fabs(col[j] - csr_get(coarse.combined, i, j)));
    }
    CHECK(worst <= 1e-12 * csr_max_abs(coarse.combined));
  }
}

TEST_CASE("transfer guards dimensions and levels") {
  const GridHierarchy g = build_hierarchy(1);
  CHECK_THROWS_AS((void)build_prolongation(g, 0), std::out_of_range);
  CHECK_THROWS_AS((void)build_prolongation(g, 2), std::out_of_range);
  const ProlongationOperator t = build_prolongation(g, 1);
  std::vector<double> bad(3), out;
  CHECK_THROWS_AS(prolongate(t, bad, out), std::invalid_argument);
  CHECK_THROWS_AS(restrict_functional(t, bad, out), std::invalid_argument);
}

TEST_SUITE_END();
