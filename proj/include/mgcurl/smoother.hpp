#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "mgcurl/assembly.hpp"
#include "mgcurl/grid.hpp"

namespace mgcurl {

// Which family of nonoverlapping subspaces augments the per-cell interior
// blocks: one block per interior coarse edge, or one per interior coarse
// vertex.
enum class SmootherKind { edge, vertex };

// Safe damping bounds: 12 congruence colors for edge blocks, 8 for vertex
// blocks (plus the mutually orthogonal cell blocks absorbed into one color).
constexpr double kMaxEtaEdge = 1.0 / 12.0;
constexpr double kMaxEtaVertex = 1.0 / 8.0;
constexpr double kDefaultEtaEdge = 1.0 / 13.0;
constexpr double kDefaultEtaVertex = 1.0 / 9.0;

inline double default_eta(SmootherKind k) {
  return k == SmootherKind::edge ? kDefaultEtaEdge : kDefaultEtaVertex;
}

// Skeleton/interior values of one subspace field (coefficients on the
// stencil's skeleton and interior DOF lists).
struct LocalField {
  Eigen::VectorXd skeleton;
  Eigen::VectorXd interior;
};

// One entity block instance: gather/scatter lists plus the id of the shared
// factorization for its congruence class.
struct EntityBlock {
  std::vector<int> interior;
  std::vector<int> skeleton;
  int tmpl = 0;
};

// Factorized data of one congruence class of entity blocks. `extension` maps
// skeleton values to the energy-minimizing interior values; `schur_chol`
// factors the block operator in the extended basis.
struct BlockTemplate {
  Eigen::LLT<Eigen::MatrixXd> interior_chol;
  Eigen::MatrixXd extension;
  Eigen::LLT<Eigen::MatrixXd> schur_chol;
};

// Additive Schwarz data for one fine level: per-cell 6x6 interior blocks (one
// shared factorization, the grid is uniform) plus edge or vertex entity
// blocks realized through Schur complements of discrete-harmonic extensions.
struct SmootherBlocks {
  SmootherKind kind = SmootherKind::edge;
  double eta = kDefaultEtaEdge;
  int fine_level = 1;
  int n_dofs = 0;
  std::vector<std::array<int, 6>> cell_dofs;
  Eigen::LLT<Eigen::MatrixXd> cell_chol;
  std::vector<EntityBlock> entities;
  std::vector<BlockTemplate> templates;
};

// Builds the blocks between fine_level and fine_level-1. Rejects eta above
// the safe bound for the kind unless unsafe_damping is set. Throws
// std::runtime_error if a block factorization fails (assembly bug signal).
SmootherBlocks build_blocks(const GridHierarchy& g, const SystemOperator& fine_op,
                            int fine_level, SmootherKind kind, double eta,
                            bool unsafe_damping = false);

// c = eta * sum of block corrections for residual r. Serial mode sweeps
// blocks in build order; openmp mode accumulates per-thread buffers and
// reduces them in thread order.
void apply_smoother(const SmootherBlocks& b, const std::vector<double>& r,
                    std::vector<double>& c, ExecMode mode = ExecMode::serial);

// Energy-minimizing interior extension of skeleton values for one entity
// block.
LocalField harmonic_extension(const SmootherBlocks& b, int entity_id,
                              const Eigen::VectorXd& skeleton_values);

// For an interior x-parallel coarse edge: the L2-minimal interior extension
// of the +-1 tangential pattern on the six fine edges meeting the coarse-edge
// midpoint, returning the curl seminorm of the extended field. Positive
// uniformly in the mesh size; regression-tested against frozen constants.
double lemma_coarse_check(const GridHierarchy& g, const SystemOperator& fine_op,
                          int fine_level, const EdgeKey& coarse_edge);

}  // namespace mgcurl
