#include "courtmotion/embedding.hpp"

#include "courtmotion/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace courtmotion {

namespace {

constexpr double kAnchorEps = 1e-12;

// Rotates each row (u, v) by angle phi.
void rotate_rows(Eigen::MatrixXd& coords, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    const double u = coords(i, 0);
    const double v = coords(i, 1);
    coords(i, 0) = c * u - s * v;
    coords(i, 1) = s * u + c * v;
  }
}

}  // namespace

AvgDistanceMatrix avg_distance_matrix(std::span<const Frame> frames, int cluster_id) {
  if (frames.empty()) {
    throw EmptyCluster();
  }
  AvgDistanceMatrix adm;
  adm.cluster_id = cluster_id;
  for (const auto& [tag, pos] : frames.front().positions) adm.labels.push_back(tag);
  const std::size_t n = adm.labels.size();

  adm.d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Frame& frame : frames) {
    if (frame.positions.size() != n) {
      throw RosterMismatch("cluster frames have differing rosters");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = frame.positions.find(adm.labels[i]);
      if (a == frame.positions.end()) {
        throw RosterMismatch("cluster frames have differing rosters");
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto b = frame.positions.find(adm.labels[j]);
        if (b == frame.positions.end()) {
          throw RosterMismatch("cluster frames have differing rosters");
        }
        adm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            (b->second - a->second).norm();
      }
    }
  }
  adm.d /= static_cast<double>(frames.size());
  adm.d = (adm.d + adm.d.transpose()).eval();
  return adm;
}

PhaseLayout classical_mds(const AvgDistanceMatrix& adm, int dim) {
  const Eigen::Index n = adm.d.rows();
  PhaseLayout layout;
  layout.cluster_id = adm.cluster_id;
  layout.labels = adm.labels;

  // Double centering: B = -1/2 J D^2 J.
  const Eigen::MatrixXd d2 = adm.d.cwiseProduct(adm.d);
  const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) -
                            Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd b = -0.5 * j * d2 * j;
  b = ((b + b.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure();
  }

  // Eigen reports ascending order; the layout wants non-increasing.
  layout.eigvals.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    layout.eigvals(i) = solver.eigenvalues()(n - 1 - i);
  }

  layout.coords = Eigen::MatrixXd::Zero(n, dim);
  for (int c = 0; c < dim && c < n; ++c) {
    const double lambda = layout.eigvals(c);
    if (lambda > 0.0) {
      layout.coords.col(c) = std::sqrt(lambda) * solver.eigenvectors().col(n - 1 - c);
    }
  }

  // Relative Frobenius error over off-diagonal entries.
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (i == k) continue;
      const double rec = (layout.coords.row(i) - layout.coords.row(k)).norm();
      num += (rec - adm.d(i, k)) * (rec - adm.d(i, k));
      den += adm.d(i, k) * adm.d(i, k);
    }
  }
  layout.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
  return layout;
}

PhaseLayout canonicalize_layout(PhaseLayout layout) {
  Eigen::MatrixXd& coords = layout.coords;
  if (coords.rows() == 0 || coords.cols() != 2) return layout;

  const Eigen::Matrix2d scatter = coords.transpose() * coords;
  const double a = scatter(0, 0);
  const double b = scatter(0, 1);
  const double d = scatter(1, 1);
  if (a + d <= kAnchorEps) return layout;  // everything at the origin

  // Principal axis onto u. When the scatter is isotropic the axis is
  // undefined; anchor the first off-origin player on +u instead.
  const double gap = std::sqrt((a - d) * (a - d) / 4.0 + b * b);
  if (gap > kAnchorEps * (a + d)) {
    rotate_rows(coords, -0.5 * std::atan2(2.0 * b, a - d));
    const Eigen::Matrix2d check = coords.transpose() * coords;
    if (check(0, 0) < check(1, 1)) {
      rotate_rows(coords, M_PI / 2.0);
    }
  } else {
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      if (coords.row(i).norm() > kAnchorEps) {
        rotate_rows(coords, -std::atan2(coords(i, 1), coords(i, 0)));
        break;
      }
    }
  }

  // Fix each axis sign off the first player with a coordinate off zero.
  for (Eigen::Index c = 0; c < 2; ++c) {
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      if (std::abs(coords(i, c)) > kAnchorEps) {
        if (coords(i, c) < 0.0) coords.col(c) = -coords.col(c);
        break;
      }
    }
  }
  return layout;
}

}  // namespace courtmotion
