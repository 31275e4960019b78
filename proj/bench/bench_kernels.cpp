// Timings of the serial reference kernels against the OpenMP ones, with
// agreement checks on the results.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "mgcurl/assembly.hpp"
#include "mgcurl/rng.hpp"
#include "mgcurl/smoother.hpp"
#include "mgcurl/vcycle.hpp"

using namespace mgcurl;

namespace {

double time_reps(int reps, const std::function<void()>& f) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
             .count() /
         reps;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

void row(const char* name, double serial, double openmp, double diff) {
  std::printf("%-18s %10.4f s %10.4f s %8.2fx   %.3e\n", name, serial, openmp,
              serial / openmp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  int level = 3, reps = 5;
  double alpha = 1.0;
  CLI::App app{"serial vs OpenMP kernel timings"};
  app.add_option("--level", level, "fine level (default 3)");
  app.add_option("--alpha", alpha, "coefficient (default 1)");
  app.add_option("--reps", reps, "repetitions per kernel (default 5)");
  CLI11_PARSE(app, argc, argv);

  const GridHierarchy g = build_hierarchy(level);
  std::printf("level %d, alpha %g, %d DOFs, %d reps\n\n", level, alpha,
              3 * (2 << level) * ((2 << level) - 1) * ((2 << level) - 1), reps);
  std::printf("%-18s %12s %12s %9s   %s\n", "kernel", "serial", "openmp",
              "speedup", "max|diff|");

  const SystemOperator op_s = assemble_operator(g, level, alpha);
  {
    SystemOperator op_p;
    const double ts =
        time_reps(reps, [&] { (void)assemble_operator(g, level, alpha); });
    const double tp = time_reps(reps, [&] {
      op_p = assemble_operator(g, level, alpha, ExecMode::openmp);
    });
    row("assembly", ts, tp, max_abs_diff(op_s.combined.vals, op_p.combined.vals));
  }

  const std::vector<double> x = random_vector(7, op_s.n_dofs);
  std::vector<double> ys(op_s.n_dofs), yp(op_s.n_dofs);
  {
    const double ts = time_reps(
        reps, [&] { csr_matvec(op_s.combined, x.data(), ys.data(),
                               ExecMode::serial); });
    const double tp = time_reps(
        reps, [&] { csr_matvec(op_s.combined, x.data(), yp.data(),
                               ExecMode::openmp); });
    row("matvec", ts, tp, max_abs_diff(ys, yp));
  }

  for (SmootherKind kind : {SmootherKind::edge, SmootherKind::vertex}) {
    const SmootherBlocks b = build_blocks(g, op_s, level, kind, default_eta(kind));
    std::vector<double> cs, cp;
    const double ts =
        time_reps(reps, [&] { apply_smoother(b, x, cs, ExecMode::serial); });
    const double tp =
        time_reps(reps, [&] { apply_smoother(b, x, cp, ExecMode::openmp); });
    row(kind == SmootherKind::edge ? "smoother(edge)" : "smoother(vertex)", ts,
        tp, max_abs_diff(cs, cp));
  }

  {
    const CycleParams params{SmootherKind::vertex, kDefaultEtaVertex, 1, false};
    const MultigridHierarchy hs = build_multigrid(g, level, alpha, params);
    const MultigridHierarchy hp =
        build_multigrid(g, level, alpha, params, ExecMode::openmp);
    const std::vector<double> z0(op_s.n_dofs, 0.0);
    std::vector<double> zs, zp;
    const double ts = time_reps(reps, [&] { zs = mg_apply(hs, level, x, z0, 1); });
    const double tp = time_reps(reps, [&] { zp = mg_apply(hp, level, x, z0, 1); });
    row("vcycle(vertex)", ts, tp, max_abs_diff(zs, zp));
  }

  return 0;
}
