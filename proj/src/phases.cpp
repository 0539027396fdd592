#include "courtmotion/phases.hpp"

#include "courtmotion/errors.hpp"
#include "courtmotion/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace courtmotion {

namespace {

// mt19937_64 with hand-scaled draws; std:: distributions are not pinned down
// by the standard, and models must be reproducible bit-for-bit from the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 gen_;
};

struct LloydResult {
  Eigen::MatrixXd centroids;
  std::vector<int> assign;  // 0-based
  double wd = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> trace;
};

double row_dist2(const Eigen::MatrixXd& X, Eigen::Index i, const Eigen::MatrixXd& C,
                 Eigen::Index j) {
  return (X.row(i) - C.row(j)).squaredNorm();
}

Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& X, int k, Rng& rng) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd centroids(k, X.cols());
  centroids.row(0) = X.row(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n))));

  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2(i) = row_dist2(X, i, centroids, 0);

  for (int j = 1; j < k; ++j) {
    const double total = d2.sum();
    Eigen::Index pick;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
    } else {
      const double r = rng.uniform01() * total;
      double cum = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cum += d2(i);
        if (cum >= r && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
    }
    centroids.row(j) = X.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), row_dist2(X, i, centroids, j));
    }
  }
  return centroids;
}

LloydResult lloyd(const Eigen::MatrixXd& X, int k, Rng& rng, int max_iter) {
  const Eigen::Index n = X.rows();
  LloydResult res;
  res.centroids = kmeanspp_init(X, k, rng);
  res.assign.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Assignment step; ties go to the lowest centroid index.
    double wd = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = row_dist2(X, i, res.centroids, 0);
      for (int j = 1; j < k; ++j) {
        const double d2 = row_dist2(X, i, res.centroids, j);
        if (d2 < best_d2) {
          best_d2 = d2;
          best = j;
        }
      }
      assign[static_cast<std::size_t>(i)] = best;
      wd += best_d2;
    }
    res.trace.push_back(wd);
    res.wd = wd;
    res.iterations = iter + 1;
    if (assign == res.assign) break;
    res.assign = assign;
    // When iterations run out, keep the centroids the final assignment was
    // computed against so rows still sit at their nearest centroid.
    if (iter + 1 == max_iter) break;

    // Update step.
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, X.cols());
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int j = assign[static_cast<std::size_t>(i)];
      sums.row(j) += X.row(i);
      ++counts[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) {
        res.centroids.row(j) = sums.row(j) / static_cast<double>(counts[static_cast<std::size_t>(j)]);
      }
    }

    // Re-seed each empty cluster from the farthest point; this can only
    // lower the objective (the farthest point's term drops to zero).
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int j = 0; j < k; ++j) {
      if (counts[static_cast<std::size_t>(j)] > 0) continue;
      Eigen::Index far = -1;
      double far_d2 = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        const double d2 = row_dist2(X, i, res.centroids, assign[static_cast<std::size_t>(i)]);
        if (d2 > far_d2) {
          far_d2 = d2;
          far = i;
        }
      }
      if (far >= 0 && far_d2 > 0.0) {
        res.centroids.row(j) = X.row(far);
        taken[static_cast<std::size_t>(far)] = true;
      }
    }
  }
  return res;
}

}  // namespace

FeatureMatrix build_features(std::span<const Frame> frames) {
  FeatureMatrix fm;
  if (frames.empty()) {
    fm.values.resize(0, 0);
    return fm;
  }

  const DistanceVector first = pairwise_distances(frames.front());
  fm.columns.reserve(first.pairs.size());
  for (const DistancePair& p : first.pairs) fm.columns.emplace_back(p.a, p.b);

  fm.values.resize(static_cast<Eigen::Index>(frames.size()),
                   static_cast<Eigen::Index>(fm.columns.size()));
  fm.frame_ts.reserve(frames.size());
  for (std::size_t r = 0; r < frames.size(); ++r) {
    const DistanceVector dv = pairwise_distances(frames[r]);
    if (dv.pairs.size() != fm.columns.size()) {
      throw RosterMismatch("frame at " + std::to_string(frames[r].t_ms) +
                           " ms has a different roster");
    }
    for (std::size_t c = 0; c < dv.pairs.size(); ++c) {
      if (dv.pairs[c].a != fm.columns[c].first || dv.pairs[c].b != fm.columns[c].second) {
        throw RosterMismatch("frame at " + std::to_string(frames[r].t_ms) +
                             " ms has a different roster");
      }
      fm.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          dv.pairs[c].distance_m;
    }
    fm.frame_ts.push_back(frames[r].t_ms);
  }
  return fm;
}

PhaseModel kmeans(const FeatureMatrix& features, int k, std::uint64_t seed, int max_iter,
                  int n_restarts) {
  const Eigen::Index n = features.values.rows();
  if (k < 1) {
    throw InputError("k must be at least 1");
  }
  if (static_cast<Eigen::Index>(k) > n) {
    throw TooManyClusters(k, static_cast<std::size_t>(n));
  }

  LloydResult best;
  for (int r = 0; r < std::max(1, n_restarts); ++r) {
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));
    LloydResult res = lloyd(features.values, k, rng, max_iter);
    if (res.wd < best.wd) best = std::move(res);
  }

  // Deviance decomposition against the global mean; BD is computed directly
  // so BD + WD = TD is a checkable identity rather than a definition.
  const Eigen::RowVectorXd mean = features.values.colwise().mean();
  double td = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    td += (features.values.row(i) - mean).squaredNorm();
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (int a : best.assign) ++counts[static_cast<std::size_t>(a)];
  double bd = 0.0;
  if (k > 1) {  // one cluster explains nothing; its centroid IS the mean
    for (int j = 0; j < k; ++j) {
      bd += static_cast<double>(counts[static_cast<std::size_t>(j)]) *
            (best.centroids.row(j) - mean).squaredNorm();
    }
  }

  // Rename clusters by decreasing size; C1 is the largest.
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
  });
  std::vector<int> new_id(static_cast<std::size_t>(k));
  for (int rank = 0; rank < k; ++rank) {
    new_id[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] = rank + 1;
  }

  PhaseModel model;
  model.k = k;
  model.centroids.resize(k, features.values.cols());
  for (int j = 0; j < k; ++j) {
    model.centroids.row(new_id[static_cast<std::size_t>(j)] - 1) = best.centroids.row(j);
  }
  model.assignments.reserve(best.assign.size());
  for (int a : best.assign) {
    model.assignments.push_back(new_id[static_cast<std::size_t>(a)]);
  }
  model.bd_td = td > 0.0 ? std::clamp(bd / td, 0.0, 1.0) : 0.0;
  model.iterations = best.iterations;
  model.seed = seed;
  model.frame_ts = features.frame_ts;
  model.objective_trace = std::move(best.trace);
  return model;
}

std::vector<std::pair<int, double>> bd_td_curve(const FeatureMatrix& features, int k_min,
                                                int k_max, std::uint64_t seed, int max_iter,
                                                int n_restarts) {
  if (k_min < 1 || k_min > k_max) {
    throw InputError("bad k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
  }
  std::vector<std::pair<int, double>> curve;
  curve.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    curve.emplace_back(k, kmeans(features, k, seed, max_iter, n_restarts).bd_td);
  }
  return curve;
}

int select_k(std::span<const std::pair<int, double>> curve, double min_gain) {
  if (curve.empty()) {
    throw InputError("empty BD/TD curve");
  }
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    if (curve[i + 1].second - curve[i].second < min_gain) return curve[i].first;
  }
  return curve.back().first;
}

PhaseCrosstab crosstab(const PhaseModel& model, std::span<const PlayLabel> labels) {
  if (labels.size() != model.frame_ts.size()) {
    throw Misaligned("assignments and labels differ in length");
  }
  std::vector<std::size_t> n(static_cast<std::size_t>(model.k), 0);
  std::vector<std::size_t> off(static_cast<std::size_t>(model.k), 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].t_ms != model.frame_ts[i]) {
      throw Misaligned("label at " + std::to_string(labels[i].t_ms) +
                       " ms does not match assignment at " +
                       std::to_string(model.frame_ts[i]) + " ms");
    }
    const std::size_t c = static_cast<std::size_t>(model.assignments[i] - 1);
    ++n[c];
    if (labels[i].label == Play::Offense) ++off[c];
  }

  PhaseCrosstab table;
  const double total = static_cast<double>(labels.size());
  for (int j = 0; j < model.k; ++j) {
    ClusterShare row;
    row.cluster = j + 1;
    row.n_frames = n[static_cast<std::size_t>(j)];
    row.share_pct = total > 0.0 ? 100.0 * static_cast<double>(row.n_frames) / total : 0.0;
    if (row.n_frames > 0) {
      row.offense_pct = 100.0 * static_cast<double>(off[static_cast<std::size_t>(j)]) /
                        static_cast<double>(row.n_frames);
      row.defense_pct = 100.0 - row.offense_pct;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace courtmotion
