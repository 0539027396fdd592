#pragma once

#include "courtmotion/types.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace courtmotion {

struct AvgDistanceMatrix {
  int cluster_id = 0;
  std::vector<TagId> labels;  // canonical tag order
  Eigen::MatrixXd d;          // symmetric, zero diagonal, meters
};

struct PhaseLayout {
  int cluster_id = 0;
  std::vector<TagId> labels;
  Eigen::MatrixXd coords;   // n x dim, centered
  Eigen::VectorXd eigvals;  // all n eigenvalues of the centered matrix, non-increasing
  double stress = 0.0;      // relative Frobenius reconstruction error, off-diagonal
};

// Mean pairwise distance between players over the cluster's frames.
// Throws EmptyCluster when there are no frames.
AvgDistanceMatrix avg_distance_matrix(std::span<const Frame> frames, int cluster_id);

// Torgerson scaling: double-center -0.5 * J D^2 J, embed with the top-dim
// eigenpairs. Negative eigenvalues are clamped to zero for the coordinates
// but reported as-is in eigvals.
PhaseLayout classical_mds(const AvgDistanceMatrix& adm, int dim = 2);

// MDS output is unique only up to isometry. Rotates the first principal axis
// onto u, then fixes each axis sign so the first player (in tag order) with a
// coordinate off zero gets a non-negative one. Idempotent and deterministic.
PhaseLayout canonicalize_layout(PhaseLayout layout);

}  // namespace courtmotion
