#include "mgcurl/grid.hpp"

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mgcurl {

namespace {

// Transverse axes of a direction, in increasing axis order.
inline std::array<int, 2> transverse(int dir) {
  switch (dir) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

}  // namespace

GridLevel::GridLevel(int level_index) : level_(level_index) {
  if (level_index < 0) throw std::invalid_argument("grid level must be >= 0");
  if (level_index > 29) throw std::invalid_argument("grid level out of range");
  n_ = 1 << (level_index + 1);
  h_ = 2.0 / n_;
  const std::int64_t nd = 3ll * n_ * (n_ - 1) * (n_ - 1);
  if (nd > 0x7fffffffll) {
    throw std::invalid_argument("level " + std::to_string(level_index) +
                                " needs " + std::to_string(nd) +
                                " DOFs, exceeding 32-bit indices");
  }
  num_dofs_ = static_cast<int>(nd);
}

bool GridLevel::valid(const EdgeKey& e) const {
  if (e.dir < 0 || e.dir > 2) return false;
  const int pos[3] = {e.i, e.j, e.k};
  for (int a = 0; a < 3; ++a) {
    const int hi = (a == e.dir) ? n_ - 1 : n_;
    if (pos[a] < 0 || pos[a] > hi) return false;
  }
  return true;
}

bool GridLevel::is_interior(const EdgeKey& e) const {
  const int pos[3] = {e.i, e.j, e.k};
  const auto t = transverse(e.dir);
  return pos[t[0]] >= 1 && pos[t[0]] <= n_ - 1 && pos[t[1]] >= 1 &&
         pos[t[1]] <= n_ - 1;
}

int GridLevel::dof_of(const EdgeKey& e) const {
  if (!valid(e)) throw std::out_of_range("edge key outside grid");
  if (!is_interior(e)) return -1;
  const int m = n_ - 1;
  const int nx = n_ * m * m;
  switch (e.dir) {
    case 0:
      return (e.i * m + (e.j - 1)) * m + (e.k - 1);
    case 1:
      return nx + ((e.i - 1) * n_ + e.j) * m + (e.k - 1);
    default:
      return 2 * nx + ((e.i - 1) * m + (e.j - 1)) * n_ + e.k;
  }
}

EdgeKey GridLevel::edge_of_dof(int dof) const {
  if (dof < 0 || dof >= num_dofs_) throw std::out_of_range("DOF id out of range");
  const int m = n_ - 1;
  const int nx = n_ * m * m;
  if (dof < nx) {
    return {0, dof / (m * m), (dof / m) % m + 1, dof % m + 1};
  }
  dof -= nx;
  if (dof < nx) {
    return {1, dof / (n_ * m) + 1, (dof / m) % n_, dof % m + 1};
  }
  dof -= nx;
  return {2, dof / (m * n_) + 1, (dof / n_) % m + 1, dof % n_};
}

std::vector<EdgeKey> GridLevel::interior_edges() const {
  std::vector<EdgeKey> out;
  out.reserve(num_dofs_);
  for (int i = 0; i < n_; ++i)
    for (int j = 1; j < n_; ++j)
      for (int k = 1; k < n_; ++k) out.push_back({0, i, j, k});
  for (int i = 1; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 1; k < n_; ++k) out.push_back({1, i, j, k});
  for (int i = 1; i < n_; ++i)
    for (int j = 1; j < n_; ++j)
      for (int k = 0; k < n_; ++k) out.push_back({2, i, j, k});
  return out;
}

std::array<int, 3> GridLevel::cell_coords(int cell) const {
  return {cell / (n_ * n_), (cell / n_) % n_, cell % n_};
}

std::array<EdgeRef, 12> GridLevel::cell_dofs(int cx, int cy, int cz) const {
  if (cx < 0 || cx >= n_ || cy < 0 || cy >= n_ || cz < 0 || cz >= n_)
    throw std::out_of_range("cell outside grid");
  std::array<EdgeRef, 12> out;
  for (int r = 0; r < 4; ++r) {
    const int b1 = r / 2, b2 = r % 2;
    out[r].key = {0, cx, cy + b1, cz + b2};
    out[4 + r].key = {1, cx + b1, cy, cz + b2};
    out[8 + r].key = {2, cx + b1, cy + b2, cz};
  }
  for (auto& e : out) e.dof = dof_of(e.key);
  return out;
}

std::vector<std::array<int, 3>> GridLevel::cells_of_edge(const EdgeKey& e) const {
  if (!valid(e)) throw std::out_of_range("edge key outside grid");
  const auto t = transverse(e.dir);
  const int pos[3] = {e.i, e.j, e.k};
  std::vector<std::array<int, 3>> out;
  for (int d1 = -1; d1 <= 0; ++d1) {
    for (int d2 = -1; d2 <= 0; ++d2) {
      std::array<int, 3> c = {pos[0], pos[1], pos[2]};
      c[t[0]] += d1;
      c[t[1]] += d2;
      if (c[t[0]] < 0 || c[t[0]] >= n_ || c[t[1]] < 0 || c[t[1]] >= n_) continue;
      out.push_back(c);
    }
  }
  return out;
}

std::array<double, 3> GridLevel::edge_start(const EdgeKey& e) const {
  return {coord(e.i), coord(e.j), coord(e.k)};
}

std::array<double, 3> GridLevel::edge_midpoint(const EdgeKey& e) const {
  auto p = edge_start(e);
  p[e.dir] += 0.5 * h_;
  return p;
}

GridHierarchy build_hierarchy(int max_level) {
  if (max_level < 0) throw std::invalid_argument("max level must be >= 0");
  GridHierarchy g;
  g.levels_.reserve(max_level + 1);
  for (int l = 0; l <= max_level; ++l) g.levels_.emplace_back(l);
  return g;
}

std::array<EdgeKey, 2> GridHierarchy::child_edges(const EdgeKey& c) {
  EdgeKey a{c.dir, 2 * c.i, 2 * c.j, 2 * c.k};
  EdgeKey b = a;
  int* pos[3] = {&b.i, &b.j, &b.k};
  *pos[c.dir] += 1;
  return {a, b};
}

std::array<std::array<int, 3>, 8> GridHierarchy::child_cells(
    const std::array<int, 3>& c) {
  std::array<std::array<int, 3>, 8> out;
  int idx = 0;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int d = 0; d <= 1; ++d)
        out[idx++] = {2 * c[0] + a, 2 * c[1] + b, 2 * c[2] + d};
  return out;
}

namespace {

// The six fine edges interior to a coarse cell, on the fine level: one pair
// per direction at the transverse center of the refined 2x2x2 block.
std::array<EdgeKey, 6> cell_interior_keys(const std::array<int, 3>& c) {
  const int x = 2 * c[0], y = 2 * c[1], z = 2 * c[2];
  return {{{0, x, y + 1, z + 1},
           {0, x + 1, y + 1, z + 1},
           {1, x + 1, y, z + 1},
           {1, x + 1, y + 1, z + 1},
           {2, x + 1, y + 1, z},
           {2, x + 1, y + 1, z + 1}}};
}

// The four fine edges interior to a coarse face: two per in-plane direction,
// lower in-plane axis first.
std::array<EdgeKey, 4> face_interior_keys(const FaceKey& f) {
  const auto t = transverse(f.normal);
  std::array<EdgeKey, 4> out;
  for (int which = 0; which < 2; ++which) {
    const int dir = t[which], other = t[1 - which];
    for (int s = 0; s < 2; ++s) {
      EdgeKey e{dir, 0, 0, 0};
      int* pos[3] = {&e.i, &e.j, &e.k};
      *pos[f.normal] = 2 * f.anchor[f.normal];
      *pos[dir] = 2 * f.anchor[dir] + s;
      *pos[other] = 2 * f.anchor[other] + 1;
      out[2 * which + s] = e;
    }
  }
  return out;
}

int interior_dof(const GridLevel& fine, const EdgeKey& e) {
  const int d = fine.dof_of(e);
  assert(d >= 0 && "stencil edge must be interior");
  return d;
}

void append_cell_interiors(const GridLevel& fine, const std::array<int, 3>& c,
                           std::vector<int>& out) {
  for (const auto& e : cell_interior_keys(c)) out.push_back(interior_dof(fine, e));
}

}  // namespace

CoarseEntityStencil cell_stencil(const GridHierarchy& g, int fine_level,
                                 const std::array<int, 3>& cell) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  const GridLevel& fine = g.level(fine_level);
  const GridLevel& coarse = g.level(fine_level - 1);
  CoarseEntityStencil s;
  s.kind = EntityKind::cell;
  s.anchor = cell;
  s.cells = {coarse.cell_id(cell[0], cell[1], cell[2])};
  append_cell_interiors(fine, cell, s.interior);
  return s;
}

CoarseEntityStencil edge_stencil(const GridHierarchy& g, int fine_level,
                                 const EdgeKey& coarse_edge) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  const GridLevel& fine = g.level(fine_level);
  const GridLevel& coarse = g.level(fine_level - 1);
  if (coarse.dof_of(coarse_edge) < 0)
    throw std::invalid_argument("edge stencils require an interior coarse edge");

  CoarseEntityStencil s;
  s.kind = EntityKind::edge;
  s.direction = coarse_edge.dir;
  s.anchor = {coarse_edge.i, coarse_edge.j, coarse_edge.k};
  const auto t = transverse(coarse_edge.dir);

  for (int d1 = -1; d1 <= 0; ++d1)
    for (int d2 = -1; d2 <= 0; ++d2) {
      std::array<int, 3> c = s.anchor;
      c[t[0]] += d1;
      c[t[1]] += d2;
      s.cells.push_back(coarse.cell_id(c[0], c[1], c[2]));
      append_cell_interiors(fine, c, s.interior);
    }

  for (const auto& sub : GridHierarchy::child_edges(coarse_edge))
    s.skeleton.push_back(interior_dof(fine, sub));
  for (int which = 0; which < 2; ++which) {
    const int nrm = t[which], other = t[1 - which];
    for (int d = -1; d <= 0; ++d) {
      FaceKey f{nrm, s.anchor};
      f.anchor[other] += d;
      s.faces.push_back(f);
      for (const auto& e : face_interior_keys(f))
        s.skeleton.push_back(interior_dof(fine, e));
    }
  }
  return s;
}

CoarseEntityStencil vertex_stencil(const GridHierarchy& g, int fine_level,
                                   const std::array<int, 3>& node) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  const GridLevel& fine = g.level(fine_level);
  const GridLevel& coarse = g.level(fine_level - 1);
  for (int a = 0; a < 3; ++a)
    if (node[a] < 1 || node[a] > coarse.n() - 1)
      throw std::invalid_argument("vertex stencils require an interior coarse node");

  CoarseEntityStencil s;
  s.kind = EntityKind::vertex;
  s.anchor = node;

  for (int dx = -1; dx <= 0; ++dx)
    for (int dy = -1; dy <= 0; ++dy)
      for (int dz = -1; dz <= 0; ++dz) {
        const std::array<int, 3> c = {node[0] + dx, node[1] + dy, node[2] + dz};
        s.cells.push_back(coarse.cell_id(c[0], c[1], c[2]));
        append_cell_interiors(fine, c, s.interior);
      }

  for (int nrm = 0; nrm < 3; ++nrm) {
    const auto t = transverse(nrm);
    for (int d1 = -1; d1 <= 0; ++d1)
      for (int d2 = -1; d2 <= 0; ++d2) {
        FaceKey f{nrm, node};
        f.anchor[t[0]] += d1;
        f.anchor[t[1]] += d2;
        s.faces.push_back(f);
        for (const auto& e : face_interior_keys(f))
          s.skeleton.push_back(interior_dof(fine, e));
      }
  }
  for (int dir = 0; dir < 3; ++dir)
    for (int d = -1; d <= 0; ++d) {
      EdgeKey ce{dir, node[0], node[1], node[2]};
      int* pos[3] = {&ce.i, &ce.j, &ce.k};
      *pos[dir] += d;
      s.edges.push_back(ce);
      for (const auto& sub : GridHierarchy::child_edges(ce))
        s.skeleton.push_back(interior_dof(fine, sub));
    }
  return s;
}

std::vector<CoarseEntityStencil> coarse_entity_stencils(const GridHierarchy& g,
                                                        int fine_level) {
  if (fine_level < 1 || fine_level > g.max_level())
    throw std::out_of_range("fine level must be in [1, max]");
  const GridLevel& coarse = g.level(fine_level - 1);
  std::vector<CoarseEntityStencil> out;
  const int nc = coarse.n();
  out.reserve(coarse.num_cells() + coarse.num_dofs() +
              (nc - 1) * (nc - 1) * (nc - 1));
  for (int c = 0; c < coarse.num_cells(); ++c)
    out.push_back(cell_stencil(g, fine_level, coarse.cell_coords(c)));
  for (const auto& e : coarse.interior_edges())
    out.push_back(edge_stencil(g, fine_level, e));
  for (int i = 1; i < nc; ++i)
    for (int j = 1; j < nc; ++j)
      for (int k = 1; k < nc; ++k)
        out.push_back(vertex_stencil(g, fine_level, {i, j, k}));
  return out;
}

}  // namespace mgcurl
