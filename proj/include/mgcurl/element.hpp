#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <vector>

namespace mgcurl {

using Vec3 = std::array<double, 3>;

// Edge lengths of an axis-aligned brick with its lower corner at the local
// origin.
struct BrickExtents {
  double hx = 1.0, hy = 1.0, hz = 1.0;
};

// Local edge numbering matches GridLevel::cell_dofs: index l encodes the
// direction d = l/4 and the two transverse corner offsets (l%4 in
// lexicographic order over the transverse axes taken in increasing order).
constexpr int local_edge_dir(int l) { return l / 4; }
constexpr std::array<int, 2> local_edge_offsets(int l) {
  return {(l % 4) / 2, (l % 4) % 2};
}

// Start point and tangential direction of a local edge; tangents point along
// the positive axes.
struct EdgeGeometry {
  Vec3 start{};
  int dir = 0;
  double length = 1.0;
};

EdgeGeometry local_edge_geometry(const BrickExtents& b, int local_edge);

// Edge-average tangential moment of a vector field. Exact for fields whose
// tangential component is constant along axis-parallel lines (all fields in
// the local edge space), evaluated as the midpoint tangential sample.
double dof_functional(const std::function<Vec3(const Vec3&)>& field,
                      const EdgeGeometry& edge);

// Value / curl of the local edge basis function at p (local coordinates).
// Throws std::domain_error outside the brick.
Vec3 shape_eval(const BrickExtents& b, int local_edge, const Vec3& p);
Vec3 shape_curl(const BrickExtents& b, int local_edge, const Vec3& p);

// Field and curl recombination from 12 local coefficients.
Vec3 local_field_eval(const BrickExtents& b, const double* coeffs, const Vec3& p);
Vec3 local_curl_eval(const BrickExtents& b, const double* coeffs, const Vec3& p);

// Element matrices, 2x2x2 tensor Gauss (exact for these integrands).
Eigen::Matrix<double, 12, 12> local_mass_matrix(const BrickExtents& b);
Eigen::Matrix<double, 12, 12> local_curlcurl_matrix(const BrickExtents& b);

// Gauss-Legendre rule on [0,1], any npts >= 1.
struct QuadratureRule {
  std::vector<double> points, weights;
};
QuadratureRule gauss_legendre_01(int npts);

}  // namespace mgcurl
