#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <vector>

#include "mgcurl/contraction.hpp"

using namespace mgcurl;

TEST_SUITE_BEGIN("contraction");

TEST_CASE("experiment configuration validation") {
  ExperimentConfig ok;
  CHECK_NOTHROW(ok.validate());

  ExperimentConfig c = ok;
  c.alphas.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.alphas = {1.0, 0.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.levels = {0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.steps = {1, 0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.cap = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ok;
  c.eta = -0.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  // damping above the provable bound needs the explicit opt-out
  c = ok;
  c.kind = SmootherKind::edge;
  c.eta = 1.0 / 7.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.unsafe_damping = true;
  CHECK_NOTHROW(c.validate());
  c = ok;
  c.kind = SmootherKind::vertex;
  c.eta = 1.0 / 8.0;
  CHECK_NOTHROW(c.validate());
  c.eta = 1.0 / 6.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("estimator guards") {
  const GridHierarchy g = build_hierarchy(1);
  const MultigridHierarchy h = build_multigrid(
      g, 1, 1.0, CycleParams{SmootherKind::edge, kDefaultEtaEdge, 1, false});
  CHECK_THROWS_AS((void)estimate_contraction(h, 0, 1, 1, 1e-6, 10),
                  std::out_of_range);
  CHECK_THROWS_AS((void)estimate_contraction(h, 2, 1, 1, 1e-6, 10),
                  std::out_of_range);
  CHECK_THROWS_AS((void)estimate_contraction(h, 1, 1, 1, 0.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)estimate_contraction(h, 1, 1, 1, 1e-6, 0),
                  std::invalid_argument);
}

TEST_CASE("estimate is insensitive to the starting vector") {
  const GridHierarchy g = build_hierarchy(1);
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const MultigridHierarchy h =
        build_multigrid(g, 1, 1.0, CycleParams{kind, default_eta(kind), 1, false});
    const ContractionEstimate a = estimate_contraction(h, 1, 1, 1, 1e-8, 2000);
    const ContractionEstimate b = estimate_contraction(h, 1, 1, 2, 1e-8, 2000);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(std::fabs(a.rho - b.rho) <= 1e-4);
  }
}

TEST_CASE("estimate matches a dense eigensolve of the error propagation") {
  const GridHierarchy g = build_hierarchy(1);
  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const MultigridHierarchy h =
        build_multigrid(g, 1, 1.0, CycleParams{kind, default_eta(kind), 1, false});
    const int n = h.ops[1].n_dofs;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = csr_get(h.ops[1].combined, i, j);
    Workspace ws;
    ws.prepare(h);
    for (int m : {1, 2}) {
      Eigen::MatrixXd e(n, n);
      std::vector<double> ei(n, 0.0), col;
      for (int i = 0; i < n; ++i) {
        ei[i] = 1.0;
        error_propagation_apply(h, 1, ei, m, col, ws);
        ei[i] = 0.0;
        for (int j = 0; j < n; ++j) e(j, i) = col[j];
      }
      // a-self-adjointness makes A E symmetric, so the a-spectral radius is
      // the top eigenvalue of the definite pencil (A E, A)
      const Eigen::MatrixXd ae = a * e;
      CHECK((ae - ae.transpose()).cwiseAbs().maxCoeff() <=
            1e-12 * ae.cwiseAbs().maxCoeff());
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
          0.5 * (ae + ae.transpose()), a);
      const double dense = es.eigenvalues().maxCoeff();
      const ContractionEstimate est =
          estimate_contraction(h, 1, m, 20240817ull, 1e-10, 5000);
      REQUIRE(est.converged);
      CHECK(std::fabs(est.rho - dense) <= 1e-6);
    }
  }
}

TEST_CASE("table sweep produces ordered converged rows") {
  ExperimentConfig cfg;
  cfg.kind = SmootherKind::edge;
  cfg.alphas = {1.0, 10.0};
  cfg.levels = {1, 2};
  cfg.steps = {1, 2};
  cfg.tol = 1e-6;  // converged values, so the step comparison below is fair
  cfg.cap = 2000;
  cfg.deterministic = true;
  const ContractionReport rep = run_table(cfg);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.all_converged());
  int r = 0;
  for (double alpha : cfg.alphas)
    for (int k : cfg.levels)
      for (int m : cfg.steps) {
        CHECK(rep.rows[r].alpha == alpha);
        CHECK(rep.rows[r].k == k);
        CHECK(rep.rows[r].m == m);
        CHECK(rep.rows[r].rho > 0.0);
        CHECK(rep.rows[r].rho < 1.0);
        CHECK(rep.rows[r].seed == cfg.seed);
        ++r;
      }
  // steps never hurt the contraction
  CHECK(rep.rows[1].rho <= rep.rows[0].rho + 1e-3);

  // an exhausted iteration budget is reported, not hidden
  ExperimentConfig capped = cfg;
  capped.levels = {1};
  capped.cap = 1;
  const ContractionReport hit = run_table(capped);
  CHECK(!hit.all_converged());
  std::ostringstream md;
  write_markdown(hit, md);
  CHECK(md.str().find('*') != std::string::npos);
}

TEST_CASE("CSV output is canonical and reproducible") {
  ExperimentConfig cfg;
  cfg.kind = SmootherKind::vertex;
  cfg.alphas = {0.01, 100.0};
  cfg.levels = {1};
  cfg.steps = {1};
  cfg.tol = 1e-3;
  cfg.cap = 100;
  cfg.deterministic = true;
  const ContractionReport rep = run_table(cfg);
  std::ostringstream a, b;
  write_csv(rep, a, true);
  write_csv(run_table(cfg), b, true);
  CHECK(a.str() == b.str());

  std::istringstream lines(a.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "smoother,alpha,k,m,rho,iters,seconds,seed");
  REQUIRE(std::getline(lines, line));
  CHECK(line.substr(0, 12) == "vertex,0.01,");
  CHECK(line.find(",0.000,") != std::string::npos);  // pinned timing column
  CHECK(line.find("20240817") != std::string::npos);
  REQUIRE(std::getline(lines, line));
  CHECK(line.substr(0, 11) == "vertex,100,");
  CHECK(!std::getline(lines, line));

  std::ostringstream md;
  write_markdown(rep, md);
  CHECK(md.str().find("### vertex smoother, alpha = 0.01") != std::string::npos);
  CHECK(md.str().find("| k |") != std::string::npos);
  CHECK(md.str().find(" m=1 |") != std::string::npos);
}

TEST_CASE("manufactured solution converges at first order in the mesh size") {
  const std::vector<double> errors = manufactured_convergence(1.0, 3);
  REQUIRE(errors.size() == 3);
  for (double e : errors) CHECK(e > 0.0);
  for (std::size_t q = 0; q + 1 < errors.size(); ++q) {
    const double ratio = errors[q] / errors[q + 1];
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
  }
  CHECK_THROWS_AS((void)manufactured_convergence(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)manufactured_convergence(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)manufactured_convergence(1.0, 2, 1), std::invalid_argument);
}

TEST_SUITE_END();
