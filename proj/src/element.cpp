#include "mgcurl/element.hpp"

#include <cmath>
#include <stdexcept>

namespace mgcurl {

namespace {

inline std::array<int, 2> transverse(int dir) {
  switch (dir) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

inline void check_local(const BrickExtents& b, int local_edge, const Vec3& p) {
  if (local_edge < 0 || local_edge >= 12)
    throw std::out_of_range("local edge index must be in [0,12)");
  if (b.hx <= 0 || b.hy <= 0 || b.hz <= 0)
    throw std::invalid_argument("brick extents must be positive");
  const double ext[3] = {b.hx, b.hy, b.hz};
  constexpr double slack = 1e-12;
  for (int a = 0; a < 3; ++a)
    if (p[a] < -slack * ext[a] || p[a] > ext[a] * (1.0 + slack))
      throw std::domain_error("evaluation point outside the brick");
}

// 1D hat factors on [0,h] and their derivatives.
inline double lag(int b, double s, double h) { return b ? s / h : 1.0 - s / h; }
inline double dlag(int b, double h) { return b ? 1.0 / h : -1.0 / h; }

}  // namespace

EdgeGeometry local_edge_geometry(const BrickExtents& b, int local_edge) {
  if (local_edge < 0 || local_edge >= 12)
    throw std::out_of_range("local edge index must be in [0,12)");
  const double ext[3] = {b.hx, b.hy, b.hz};
  const int d = local_edge_dir(local_edge);
  const auto off = local_edge_offsets(local_edge);
  const auto t = transverse(d);
  EdgeGeometry e;
  e.dir = d;
  e.length = ext[d];
  e.start[t[0]] = off[0] * ext[t[0]];
  e.start[t[1]] = off[1] * ext[t[1]];
  return e;
}

double dof_functional(const std::function<Vec3(const Vec3&)>& field,
                      const EdgeGeometry& edge) {
  Vec3 mid = edge.start;
  mid[edge.dir] += 0.5 * edge.length;
  return field(mid)[edge.dir];
}

Vec3 shape_eval(const BrickExtents& b, int local_edge, const Vec3& p) {
  check_local(b, local_edge, p);
  const double ext[3] = {b.hx, b.hy, b.hz};
  const int d = local_edge_dir(local_edge);
  const auto off = local_edge_offsets(local_edge);
  const auto t = transverse(d);
  Vec3 v{};
  v[d] = lag(off[0], p[t[0]], ext[t[0]]) * lag(off[1], p[t[1]], ext[t[1]]);
  return v;
}

Vec3 shape_curl(const BrickExtents& b, int local_edge, const Vec3& p) {
  check_local(b, local_edge, p);
  const double ext[3] = {b.hx, b.hy, b.hz};
  const int d = local_edge_dir(local_edge);
  const auto off = local_edge_offsets(local_edge);
  const auto t = transverse(d);
  // curl(f e_d) = sum over transverse axes a of (df/da) (e_a x e_d)
  Vec3 v{};
  for (int which = 0; which < 2; ++which) {
    const int a = t[which], o = t[1 - which];
    const double df = dlag(off[which], ext[a]) * lag(off[1 - which], p[o], ext[o]);
    const int c = 3 - a - d;  // remaining axis
    const int sign = ((a + 1) % 3 == d) ? 1 : -1;  // e_a x e_d = sign * e_c
    v[c] += sign * df;
  }
  return v;
}

Vec3 local_field_eval(const BrickExtents& b, const double* coeffs, const Vec3& p) {
  Vec3 out{};
  for (int l = 0; l < 12; ++l) {
    if (coeffs[l] == 0.0) continue;
    const Vec3 s = shape_eval(b, l, p);
    for (int a = 0; a < 3; ++a) out[a] += coeffs[l] * s[a];
  }
  return out;
}

Vec3 local_curl_eval(const BrickExtents& b, const double* coeffs, const Vec3& p) {
  Vec3 out{};
  for (int l = 0; l < 12; ++l) {
    if (coeffs[l] == 0.0) continue;
    const Vec3 s = shape_curl(b, l, p);
    for (int a = 0; a < 3; ++a) out[a] += coeffs[l] * s[a];
  }
  return out;
}

namespace {

template <typename Eval>
Eigen::Matrix<double, 12, 12> quad_matrix(const BrickExtents& b, Eval eval) {
  const QuadratureRule q = gauss_legendre_01(2);
  Eigen::Matrix<double, 12, 12> out = Eigen::Matrix<double, 12, 12>::Zero();
  const double ext[3] = {b.hx, b.hy, b.hz};
  for (std::size_t ix = 0; ix < q.points.size(); ++ix)
    for (std::size_t iy = 0; iy < q.points.size(); ++iy)
      for (std::size_t iz = 0; iz < q.points.size(); ++iz) {
        const Vec3 p = {q.points[ix] * ext[0], q.points[iy] * ext[1],
                        q.points[iz] * ext[2]};
        const double w = q.weights[ix] * q.weights[iy] * q.weights[iz] *
                         ext[0] * ext[1] * ext[2];
        std::array<Vec3, 12> vals;
        for (int l = 0; l < 12; ++l) vals[l] = eval(l, p);
        for (int i = 0; i < 12; ++i)
          for (int j = 0; j <= i; ++j) {
            const double dot = vals[i][0] * vals[j][0] + vals[i][1] * vals[j][1] +
                               vals[i][2] * vals[j][2];
            out(i, j) += w * dot;
          }
      }
  return out.selfadjointView<Eigen::Lower>();
}

}  // namespace

Eigen::Matrix<double, 12, 12> local_mass_matrix(const BrickExtents& b) {
  return quad_matrix(b, [&](int l, const Vec3& p) { return shape_eval(b, l, p); });
}

Eigen::Matrix<double, 12, 12> local_curlcurl_matrix(const BrickExtents& b) {
  return quad_matrix(b, [&](int l, const Vec3& p) { return shape_curl(b, l, p); });
}

QuadratureRule gauss_legendre_01(int npts) {
  if (npts < 1) throw std::invalid_argument("quadrature order must be >= 1");
  QuadratureRule r;
  r.points.resize(npts);
  r.weights.resize(npts);
  // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
  for (int i = 0; i < npts; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (npts == 1) {
        p1 = x;  // P_1
      }
      for (int n = 2; n <= npts; ++n) {
        const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = npts * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.points[i] = 0.5 * (1.0 - x);  // roots come out in descending x
    r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace mgcurl
