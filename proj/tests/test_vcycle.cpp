#include <doctest.h>

#include <cmath>
#include <vector>

#include "mgcurl/contraction.hpp"
#include "mgcurl/rng.hpp"
#include "mgcurl/vcycle.hpp"

using namespace mgcurl;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

double sup(const std::vector<double>& a) {
  double worst = 0.0;
  for (double v : a) worst = std::max(worst, std::fabs(v));
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("vcycle");

TEST_CASE("the exact solution is a fixed point of the cycle") {
  const GridHierarchy g = build_hierarchy(2);
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const MultigridHierarchy h = build_multigrid(
        g, 2, 1.0, CycleParams{kind, default_eta(kind), 2, false});
    const std::vector<double> zstar = random_vector(3, h.ops[2].n_dofs);
    std::vector<double> rhs;
    apply_operator(h.ops[2], zstar, rhs);
    const std::vector<double> z = mg_apply(h, 2, rhs, zstar, 2);
    CHECK(sup_diff(z, zstar) <= 1e-13 * sup(zstar));
  }
}

TEST_CASE("zero data stays zero and the map is affine-linear") {
  const GridHierarchy g = build_hierarchy(2);
  const MultigridHierarchy h = build_multigrid(
      g, 2, 0.1, CycleParams{SmootherKind::edge, kDefaultEtaEdge, 1, false});
  const int n = h.ops[2].n_dofs;
  const std::vector<double> zero(n, 0.0);
  CHECK(sup(mg_apply(h, 2, zero, zero, 1)) == 0.0);

  // error propagation is linear
  Workspace ws;
  ws.prepare(h);
  const std::vector<double> w1 = random_vector(4, n);
  const std::vector<double> w2 = random_vector(5, n);
  std::vector<double> e1, e2, e12, combo(n);
  error_propagation_apply(h, 2, w1, 1, e1, ws);
  error_propagation_apply(h, 2, w2, 1, e2, ws);
  for (int q = 0; q < n; ++q) combo[q] = 2.0 * w1[q] - 0.5 * w2[q];
  error_propagation_apply(h, 2, combo, 1, e12, ws);
  for (int q = 0; q < n; ++q) combo[q] = 2.0 * e1[q] - 0.5 * e2[q];
  CHECK(sup_diff(e12, combo) <= 1e-12 * std::max(1.0, sup(combo)));
}

TEST_CASE("the coarsest level is solved exactly") {
  const GridHierarchy g = build_hierarchy(1);
  const MultigridHierarchy h = build_multigrid(
      g, 1, 1.0, CycleParams{SmootherKind::vertex, kDefaultEtaVertex, 1, false});
  Workspace ws;
  ws.prepare(h);
  const std::vector<double> w = random_vector(6, h.ops[0].n_dofs);
  std::vector<double> out;
  error_propagation_apply(h, 0, w, 3, out, ws);
  CHECK(sup(out) <= 1e-12 * sup(w));
}

TEST_CASE("error propagation is a-symmetric with Rayleigh quotients in [0,1)") {
  const GridHierarchy g = build_hierarchy(2);
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex})
    for (double alpha : {0.01, 1.0, 100.0}) {
      const MultigridHierarchy h =
          build_multigrid(g, 2, alpha, CycleParams{kind, default_eta(kind), 1, false});
      Workspace ws;
      ws.prepare(h);
      const int n = h.ops[2].n_dofs;
      const std::vector<double> w1 = random_vector(7, n);
      const std::vector<double> w2 = random_vector(8, n);
      std::vector<double> e1, e2;
      error_propagation_apply(h, 2, w1, 1, e1, ws);
      error_propagation_apply(h, 2, w2, 1, e2, ws);
      const double lhs = a_inner(h.ops[2], e1, w2);
      const double rhs = a_inner(h.ops[2], w1, e2);
      CHECK(std::fabs(lhs - rhs) <= 1e-11 * (std::fabs(lhs) + std::fabs(rhs)));

      for (int trial = 0; trial < 3; ++trial) {
        const std::vector<double> w = random_vector(50 + trial, n);
        std::vector<double> ew;
        error_propagation_apply(h, 2, w, 1, ew, ws);
        const double rq = a_inner(h.ops[2], ew, w) / a_inner(h.ops[2], w, w);
        CHECK(rq >= -1e-10);
        CHECK(rq < 1.0);
      }
    }
}

TEST_CASE("more smoothing steps never slow the cycle down") {
  const GridHierarchy g = build_hierarchy(2);
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const MultigridHierarchy h =
        build_multigrid(g, 2, 1.0, CycleParams{kind, default_eta(kind), 1, false});
    double prev = 1.0;
    for (int m = 1; m <= 4; ++m) {
      const ContractionEstimate est =
          estimate_contraction(h, 2, m, 20240817ull, 1e-4, 200);
      CHECK(est.rho < prev + 1e-3);
      CHECK(est.rho < 1.0);
      CHECK(est.rho > 0.0);
      prev = est.rho;
    }
  }
}

TEST_CASE("preconditioned CG recovers a known solution quickly") {
  const GridHierarchy g = build_hierarchy(3);
  for (int k : {2, 3}) {
    const MultigridHierarchy h = build_multigrid(
        g, k, 1.0, CycleParams{SmootherKind::vertex, kDefaultEtaVertex, 1, false});
    const std::vector<double> ustar = random_vector(9, h.ops[k].n_dofs);
    std::vector<double> f;
    apply_operator(h.ops[k], ustar, f);
    const PcgResult res = pcg_solve(h, f, 1e-10, 100);
    CHECK(res.converged);
    CHECK(res.iterations <= 30);
    std::vector<double> err(ustar.size());
    for (std::size_t q = 0; q < ustar.size(); ++q) err[q] = res.x[q] - ustar[q];
    const double rel =
        std::sqrt(a_inner(h.ops[k], err, err) / a_inner(h.ops[k], ustar, ustar));
    CHECK(rel <= 1e-6);
  }
}

TEST_CASE("degenerate CG inputs") {
  const GridHierarchy g = build_hierarchy(1);
  const MultigridHierarchy h = build_multigrid(
      g, 1, 1.0, CycleParams{SmootherKind::edge, kDefaultEtaEdge, 1, false});
  const int n = h.ops[1].n_dofs;

  const PcgResult zero = pcg_solve(h, std::vector<double>(n, 0.0), 1e-10, 50);
  CHECK(zero.converged);
  CHECK(zero.iterations == 0);
  CHECK(sup(zero.x) == 0.0);

  const PcgResult trivial = pcg_solve(h, random_vector(10, n), 1.0, 50);
  CHECK(trivial.converged);
  CHECK(trivial.iterations == 0);

  CHECK_THROWS_AS((void)pcg_solve(h, std::vector<double>(3, 1.0), 1e-10, 50),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)pcg_solve(h, std::vector<double>(n, 1.0), 1e-10, -1),
                  std::invalid_argument);
}

TEST_CASE("construction and application guards") {
  const GridHierarchy g = build_hierarchy(1);
  CHECK_THROWS_AS((void)build_multigrid(g, 5, 1.0, CycleParams{}),
                  std::out_of_range);
  CycleParams bad;
  bad.m = 0;
  CHECK_THROWS_AS((void)build_multigrid(g, 1, 1.0, bad), std::invalid_argument);

  const MultigridHierarchy h = build_multigrid(g, 1, 1.0, CycleParams{});
  const int n = h.ops[1].n_dofs;
  const std::vector<double> v(n, 1.0), short_v(3, 1.0);
  Workspace ws;
  ws.prepare(h);
  std::vector<double> out;
  CHECK_THROWS_AS((void)mg_apply(h, 2, v, v, 1), std::out_of_range);
  CHECK_THROWS_AS((void)mg_apply(h, 1, v, v, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)mg_apply(h, 1, short_v, v, 1), std::invalid_argument);
  CHECK_THROWS_AS(error_propagation_apply(h, 1, short_v, 1, out, ws),
                  std::invalid_argument);
}

TEST_CASE("repeated serial estimates are bitwise stable") {
  const GridHierarchy g = build_hierarchy(2);
  const MultigridHierarchy h1 = build_multigrid(
      g, 2, 10.0, CycleParams{SmootherKind::edge, kDefaultEtaEdge, 1, false});
  const MultigridHierarchy h2 = build_multigrid(
      g, 2, 10.0, CycleParams{SmootherKind::edge, kDefaultEtaEdge, 1, false});
  const ContractionEstimate a = estimate_contraction(h1, 2, 1, 42, 1e-5, 100);
  const ContractionEstimate b = estimate_contraction(h2, 2, 1, 42, 1e-5, 100);
  CHECK(a.rho == b.rho);
  CHECK(a.iterations == b.iterations);
}

TEST_SUITE_END();
