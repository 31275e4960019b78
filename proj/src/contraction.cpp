#include "mgcurl/contraction.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "mgcurl/rng.hpp"

namespace mgcurl {

void ExperimentConfig::validate() const {
  if (alphas.empty() || levels.empty() || steps.empty())
    throw std::invalid_argument("alpha, level and step lists must be nonempty");
  for (double a : alphas)
    if (a <= 0.0) throw std::invalid_argument("alpha must be positive");
  for (int k : levels)
    if (k < 1) throw std::invalid_argument("levels must be >= 1");
  for (int m : steps)
    if (m < 1) throw std::invalid_argument("smoothing steps must be >= 1");
  if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (cap < 1) throw std::invalid_argument("iteration cap must be >= 1");
  const double bound = unsafe_damping
                           ? 1.0
                           : (kind == SmootherKind::edge ? kMaxEtaEdge
                                                         : kMaxEtaVertex);
  if (eta < 0.0 || (eta > 0.0 && eta > bound * (1.0 + 1e-12)))
    throw std::invalid_argument("eta outside (0, safe bound]");
}

ContractionEstimate estimate_contraction(const MultigridHierarchy& h, int k,
                                         int m, std::uint64_t seed, double tol,
                                         int cap) {
  if (k < 1 || k > h.top_level)
    throw std::out_of_range("contraction level outside the hierarchy");
  if (tol <= 0.0 || cap < 1)
    throw std::invalid_argument("bad power-iteration parameters");
  const int n = h.ops[k].n_dofs;
  Workspace ws;
  ws.prepare(h);

  std::vector<double> w = random_vector(seed, n);
  std::vector<double> aw(n), v(n), av(n);
  csr_matvec(h.ops[k].combined, w.data(), aw.data(), h.mode);
  {
    const double nrm = std::sqrt(dot(aw, w));
    if (nrm == 0.0) throw std::runtime_error("degenerate start vector");
    for (int q = 0; q < n; ++q) {
      w[q] /= nrm;
      aw[q] /= nrm;
    }
  }

  ContractionEstimate est;
  double rho_prev = 0.0;
  for (int it = 1; it <= cap; ++it) {
    // v = E w, reusing A w from the previous normalization.
    std::vector<double> z(n, 0.0);
    mg_apply(h, k, aw, z, m, v, ws);
    for (int q = 0; q < n; ++q) v[q] = w[q] - v[q];

    csr_matvec(h.ops[k].combined, v.data(), av.data(), h.mode);
    const double num = dot(av, w);
    const double den = dot(aw, w);
    const double rho = num / den;
    est.rho = rho;
    est.iterations = it;
    if (it > 1 && std::abs(rho - rho_prev) <= tol * std::abs(rho)) {
      est.converged = true;
      return est;
    }
    rho_prev = rho;

    const double nrm = std::sqrt(std::max(dot(av, v), 0.0));
    if (nrm == 0.0) {  // E annihilated the vector; contraction is trivial
      est.converged = true;
      est.rho = 0.0;
      return est;
    }
    for (int q = 0; q < n; ++q) {
      w[q] = v[q] / nrm;
      aw[q] = av[q] / nrm;
    }
  }
  return est;
}

bool ContractionReport::all_converged() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ContractionRow& r) { return r.converged; });
}

ContractionReport run_table(const ExperimentConfig& cfg) {
  cfg.validate();
  const int top = *std::max_element(cfg.levels.begin(), cfg.levels.end());
  const ExecMode mode =
      cfg.deterministic ? ExecMode::serial : ExecMode::openmp;

  ContractionReport rep;
  for (double alpha : cfg.alphas) {
    const GridHierarchy grid = build_hierarchy(top);
    const CycleParams params{cfg.kind, cfg.effective_eta(), 1,
                             cfg.unsafe_damping};
    const MultigridHierarchy mg = build_multigrid(grid, top, alpha, params, mode);
    for (int k : cfg.levels)
      for (int m : cfg.steps) {
        const auto t0 = std::chrono::steady_clock::now();
        const ContractionEstimate est =
            estimate_contraction(mg, k, m, cfg.seed, cfg.tol, cfg.cap);
        const auto t1 = std::chrono::steady_clock::now();
        ContractionRow row;
        row.kind = cfg.kind;
        row.alpha = alpha;
        row.k = k;
        row.m = m;
        row.rho = est.rho;
        row.iters = est.iterations;
        row.converged = est.converged;
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        row.seed = cfg.seed;
        rep.rows.push_back(row);
      }
  }
  return rep;
}

std::string smoother_name(SmootherKind k) {
  return k == SmootherKind::edge ? "edge" : "vertex";
}

void write_csv(const ContractionReport& rep, std::ostream& os,
               bool zero_seconds) {
  os << "smoother,alpha,k,m,rho,iters,seconds,seed\n";
  char buf[160];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%s,%g,%d,%d,%.9g,%d,%.3f,%llu\n",
                  smoother_name(r.kind).c_str(), r.alpha, r.k, r.m, r.rho,
                  r.iters, zero_seconds ? 0.0 : r.seconds,
                  static_cast<unsigned long long>(r.seed));
    os << buf;
  }
}

void write_markdown(const ContractionReport& rep, std::ostream& os) {
  std::vector<double> alphas;
  std::vector<int> levels, steps;
  for (const auto& r : rep.rows) {
    if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end())
      alphas.push_back(r.alpha);
    if (std::find(levels.begin(), levels.end(), r.k) == levels.end())
      levels.push_back(r.k);
    if (std::find(steps.begin(), steps.end(), r.m) == steps.end())
      steps.push_back(r.m);
  }
  std::sort(levels.begin(), levels.end());
  std::sort(steps.begin(), steps.end());

  char buf[64];
  for (double a : alphas) {
    std::snprintf(buf, sizeof buf, "%g", a);
    os << "\n### " << smoother_name(rep.rows.front().kind)
       << " smoother, alpha = " << buf << "\n\n";
    os << "| k |";
    for (int m : steps) os << " m=" << m << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < steps.size(); ++i) os << "---|";
    os << "\n";
    for (int k : levels) {
      os << "| " << k << " |";
      for (int m : steps) {
        const auto it =
            std::find_if(rep.rows.begin(), rep.rows.end(), [&](const auto& r) {
              return r.alpha == a && r.k == k && r.m == m;
            });
        if (it == rep.rows.end()) {
          os << " - |";
        } else {
          std::snprintf(buf, sizeof buf, " %.3f%s |", it->rho,
                        it->converged ? "" : "*");
          os << buf;
        }
      }
      os << "\n";
    }
  }
  os << "\nEntries marked * did not meet the power-iteration tolerance.\n";
}

Vec3 manufactured_field(const Vec3& p) {
  // The first component varies along x, so the best approximation by fields
  // that are piecewise constant along their own axis is of first order.
  const double gx = std::sin(M_PI * p[0]);
  const double gy = std::sin(M_PI * p[1]);
  const double gz = std::sin(M_PI * p[2]);
  return {gx * gy * gz, 0.0, 0.0};
}

Vec3 manufactured_load(double alpha, const Vec3& p) {
  // curl curl u = (2 pi^2 u1, d/dx d/dy u1, d/dx d/dz u1).
  const double gx = std::sin(M_PI * p[0]), dgx = M_PI * std::cos(M_PI * p[0]);
  const double gy = std::sin(M_PI * p[1]), dgy = M_PI * std::cos(M_PI * p[1]);
  const double gz = std::sin(M_PI * p[2]), dgz = M_PI * std::cos(M_PI * p[2]);
  const double u1 = gx * gy * gz;
  return {(2.0 * M_PI * M_PI * alpha + 1.0) * u1, alpha * dgx * dgy * gz,
          alpha * dgx * gy * dgz};
}

std::vector<double> manufactured_convergence(double alpha, int max_level,
                                             int quad_order, SmootherKind kind,
                                             ExecMode mode) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (max_level < 1) throw std::invalid_argument("max level must be >= 1");
  if (quad_order < 2)
    throw std::invalid_argument("quadrature order must be >= 2");

  const GridHierarchy grid = build_hierarchy(max_level);
  const CycleParams params{kind, default_eta(kind), 2};

  std::vector<double> errors;
  for (int lvl = 1; lvl <= max_level; ++lvl) {
    const MultigridHierarchy mg = build_multigrid(grid, lvl, alpha, params, mode);
    const auto f = [&](const Vec3& p) { return manufactured_load(alpha, p); };
    const std::vector<double> rhs =
        assemble_load(grid, lvl, f, quad_order, mode);
    const PcgResult sol = pcg_solve(mg, rhs, 1e-10, 400);
    if (!sol.converged)
      throw std::runtime_error("PCG did not reach the requested tolerance");

    // || u_h - u ||_{L2} by per-cell quadrature.
    const GridLevel& gl = grid.level(lvl);
    const double h = gl.h();
    const BrickExtents brick{h, h, h};
    const QuadratureRule q = gauss_legendre_01(quad_order);
    double err2 = 0.0;
    for (int cell = 0; cell < gl.num_cells(); ++cell) {
      const auto cc = gl.cell_coords(cell);
      const auto dofs = gl.cell_dofs(cc[0], cc[1], cc[2]);
      double coeffs[12];
      for (int l = 0; l < 12; ++l)
        coeffs[l] = dofs[l].boundary() ? 0.0 : sol.x[dofs[l].dof];
      const Vec3 origin = {gl.coord(cc[0]), gl.coord(cc[1]), gl.coord(cc[2])};
      for (std::size_t ix = 0; ix < q.points.size(); ++ix)
        for (std::size_t iy = 0; iy < q.points.size(); ++iy)
          for (std::size_t iz = 0; iz < q.points.size(); ++iz) {
            const Vec3 local = {q.points[ix] * h, q.points[iy] * h,
                                q.points[iz] * h};
            const Vec3 global = {origin[0] + local[0], origin[1] + local[1],
                                 origin[2] + local[2]};
            const double w =
                q.weights[ix] * q.weights[iy] * q.weights[iz] * h * h * h;
            const Vec3 uh = local_field_eval(brick, coeffs, local);
            const Vec3 ue = manufactured_field(global);
            const double dx = uh[0] - ue[0], dy = uh[1] - ue[1],
                         dz = uh[2] - ue[2];
            err2 += w * (dx * dx + dy * dy + dz * dz);
          }
    }
    errors.push_back(std::sqrt(err2));
  }
  return errors;
}

}  // namespace mgcurl
