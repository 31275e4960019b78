#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace mgcurl {

// Axis-aligned edge of the structured n^3 grid on (-1,1)^3, identified by its
// direction (0:x, 1:y, 2:z) and the lattice coordinates of its lower endpoint.
struct EdgeKey {
  int dir = 0;
  int i = 0, j = 0, k = 0;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

// Edge of a cell together with its global DOF id; dof < 0 marks an edge on
// the domain boundary whose tangential DOF is eliminated.
struct EdgeRef {
  EdgeKey key;
  int dof = -1;
  bool boundary() const { return dof < 0; }
};

// Axis-aligned grid face. `normal` is the axis orthogonal to the face; the
// coordinate along `normal` is the plane index, the other two coordinates are
// the lower corner of the face within its plane.
struct FaceKey {
  int normal = 0;
  std::array<int, 3> anchor{};
  friend bool operator==(const FaceKey&, const FaceKey&) = default;
};

// One refinement level: n = 2^(level+1) cells per axis, mesh size h = 2/n.
// Interior-edge DOFs are numbered direction-major, then lexicographically by
// (i,j,k).
class GridLevel {
public:
  GridLevel() = default;
  explicit GridLevel(int level_index);

  int level_index() const { return level_; }
  int n() const { return n_; }
  double h() const { return h_; }
  int num_dofs() const { return num_dofs_; }
  int num_cells() const { return n_ * n_ * n_; }

  // Lattice node -> physical coordinate.
  double coord(int idx) const { return -1.0 + h_ * idx; }

  bool valid(const EdgeKey& e) const;
  bool is_interior(const EdgeKey& e) const;

  // Interior DOF id, or -1 for a boundary edge. Throws on malformed keys.
  int dof_of(const EdgeKey& e) const;
  EdgeKey edge_of_dof(int dof) const;

  // All interior edges in DOF order.
  std::vector<EdgeKey> interior_edges() const;

  int cell_id(int cx, int cy, int cz) const { return (cx * n_ + cy) * n_ + cz; }
  std::array<int, 3> cell_coords(int cell) const;

  // The 12 edges of a cell: 4 x-edges, 4 y-edges, 4 z-edges, each group in
  // lexicographic order of the two transverse corner offsets.
  std::array<EdgeRef, 12> cell_dofs(int cx, int cy, int cz) const;

  // Cells whose closure contains the edge (up to 4).
  std::vector<std::array<int, 3>> cells_of_edge(const EdgeKey& e) const;

  std::array<double, 3> edge_midpoint(const EdgeKey& e) const;
  std::array<double, 3> edge_start(const EdgeKey& e) const;

private:
  int level_ = 0;
  int n_ = 2;
  double h_ = 1.0;
  int num_dofs_ = 6;
};

// Nested levels 0..L. Level l+1 halves the mesh of level l; children maps are
// index arithmetic on the structured lattice.
class GridHierarchy {
public:
  const GridLevel& level(int l) const { return levels_.at(l); }
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }

  // Sub-edges of a coarse edge on the next finer level, ordered along the
  // edge direction.
  static std::array<EdgeKey, 2> child_edges(const EdgeKey& coarse);
  // The 8 fine cells refining a coarse cell, offsets in lexicographic order.
  static std::array<std::array<int, 3>, 8> child_cells(const std::array<int, 3>& coarse);

  friend GridHierarchy build_hierarchy(int max_level);

private:
  std::vector<GridLevel> levels_;
};

// Throws std::invalid_argument if the finest-level DOF count would overflow
// the 32-bit index type used throughout.
GridHierarchy build_hierarchy(int max_level);

enum class EntityKind { cell, edge, vertex };

// Fine-level DOF footprint of one coarse entity. `interior` collects the six
// edge DOFs inside each adjacent coarse cell (cells in `cells` order);
// `skeleton` collects the fine edges on the free part of the coarse skeleton:
// for an edge entity its two sub-edges followed by the four interior edges of
// each adjacent face, for a vertex entity the interior edges of its twelve
// faces followed by the sub-edges of its six coarse edges. Orders are fixed so
// congruent entities produce congruent stencils.
struct CoarseEntityStencil {
  EntityKind kind = EntityKind::cell;
  int direction = -1;  // edge entities only
  std::array<int, 3> anchor{};
  std::vector<int> interior;
  std::vector<int> skeleton;
  std::vector<int> cells;
  std::vector<FaceKey> faces;
  std::vector<EdgeKey> edges;
};

CoarseEntityStencil cell_stencil(const GridHierarchy& g, int fine_level,
                                 const std::array<int, 3>& cell);
CoarseEntityStencil edge_stencil(const GridHierarchy& g, int fine_level,
                                 const EdgeKey& coarse_edge);
CoarseEntityStencil vertex_stencil(const GridHierarchy& g, int fine_level,
                                   const std::array<int, 3>& node);

// All stencils between fine_level and fine_level-1: coarse cells in
// lexicographic order, then interior coarse edges in coarse DOF order, then
// interior coarse vertices lexicographically. Requires fine_level >= 1.
std::vector<CoarseEntityStencil> coarse_entity_stencils(const GridHierarchy& g,
                                                        int fine_level);

}  // namespace mgcurl
