#pragma once

#include "courtmotion/segmentation.hpp"
#include "courtmotion/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace courtmotion {

// Per-frame pairwise-distance rows in canonical pair order. Distances share
// units (meters), so columns are left unstandardized.
struct FeatureMatrix {
  Eigen::MatrixXd values;  // one row per frame
  std::vector<std::int64_t> frame_ts;
  std::vector<std::pair<TagId, TagId>> columns;
};

struct PhaseModel {
  int k = 0;
  Eigen::MatrixXd centroids;     // k x d; row i is the centroid of cluster i+1
  std::vector<int> assignments;  // per row, ids 1..k with C1 the largest cluster
  double bd_td = 0.0;            // between deviance / total deviance
  int iterations = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> frame_ts;
  // Within-cluster deviance after each Lloyd assignment of the winning
  // restart; non-increasing by construction.
  std::vector<double> objective_trace;
};

struct ClusterShare {
  int cluster = 0;
  std::size_t n_frames = 0;
  double share_pct = 0.0;
  double offense_pct = 0.0;
  double defense_pct = 0.0;
};

struct PhaseCrosstab {
  std::vector<ClusterShare> rows;  // ordered by cluster id
};

// Throws RosterMismatch unless all frames share one roster.
FeatureMatrix build_features(std::span<const Frame> frames);

// Lloyd iterations from k-means++ seeding, best of n_restarts by
// within-cluster deviance; empty clusters are re-seeded from the farthest
// point. Deterministic given (features, k, seed).
PhaseModel kmeans(const FeatureMatrix& features, int k, std::uint64_t seed,
                  int max_iter = 100, int n_restarts = 10);

std::vector<std::pair<int, double>> bd_td_curve(const FeatureMatrix& features, int k_min,
                                                int k_max, std::uint64_t seed,
                                                int max_iter = 100, int n_restarts = 10);

// Smallest k whose successor gain falls below min_gain; last k otherwise.
int select_k(std::span<const std::pair<int, double>> curve, double min_gain = 0.05);

// Per-cluster frame counts, share of total and offense/defense percentages.
// defense_pct is the exact complement of offense_pct.
PhaseCrosstab crosstab(const PhaseModel& model, std::span<const PlayLabel> labels);

}  // namespace courtmotion
