#include "courtmotion/kinematics.hpp"

#include "courtmotion/errors.hpp"

#include <Eigen/Dense>

#include <string>

namespace courtmotion {

std::vector<StateEstimate> kalman_filter(const Trajectory& trajectory,
                                         const KalmanParams& params) {
  std::vector<StateEstimate> estimates;
  if (trajectory.samples.empty()) return estimates;
  estimates.reserve(trajectory.samples.size());

  using Mat4 = Eigen::Matrix4d;
  using Vec4 = Eigen::Vector4d;
  using Mat24 = Eigen::Matrix<double, 2, 4>;

  Mat24 H = Mat24::Zero();
  H(0, 0) = 1.0;
  H(1, 1) = 1.0;
  const Eigen::Matrix2d R = params.measurement_noise * Eigen::Matrix2d::Identity();

  // State (x, y, vx, vy), initialized at the first measurement.
  const TrajectoryPoint& first = trajectory.samples.front();
  Vec4 state;
  state << first.pos.x(), first.pos.y(), 0.0, 0.0;
  Mat4 cov = Mat4::Zero();
  cov(0, 0) = cov(1, 1) = params.initial_position_var;
  cov(2, 2) = cov(3, 3) = params.initial_velocity_var;

  estimates.push_back({first.t_ms, first.pos, Vec2::Zero(), cov});

  std::int64_t prev_t = first.t_ms;
  for (std::size_t i = 1; i < trajectory.samples.size(); ++i) {
    const TrajectoryPoint& sample = trajectory.samples[i];
    if (sample.t_ms <= prev_t) {
      throw NonmonotonicTime("timestamp " + std::to_string(sample.t_ms) +
                             " does not increase past " + std::to_string(prev_t));
    }
    const double dt = static_cast<double>(sample.t_ms - prev_t) / 1000.0;
    prev_t = sample.t_ms;

    Mat4 F = Mat4::Identity();
    F(0, 2) = dt;
    F(1, 3) = dt;

    // Discrete white-noise acceleration, one block per axis.
    const double q = params.process_noise_accel;
    const double dt2 = dt * dt;
    Mat4 Q = Mat4::Zero();
    Q(0, 0) = Q(1, 1) = q * dt2 * dt2 / 4.0;
    Q(0, 2) = Q(2, 0) = q * dt2 * dt / 2.0;
    Q(1, 3) = Q(3, 1) = q * dt2 * dt / 2.0;
    Q(2, 2) = Q(3, 3) = q * dt2;

    state = F * state;
    cov = F * cov * F.transpose() + Q;

    const Eigen::Vector2d innovation = sample.pos - H * state;
    const Eigen::Matrix2d S = H * cov * H.transpose() + R;
    const Eigen::Matrix<double, 4, 2> K = cov * H.transpose() * S.inverse();
    state += K * innovation;
    // Joseph form stays positive semi-definite even with tiny measurement
    // noise, where (I - KH) P alone degrades.
    const Mat4 ikh = Mat4::Identity() - K * H;
    cov = ikh * cov * ikh.transpose() + K * R * K.transpose();
    cov = ((cov + cov.transpose()) / 2.0).eval();  // keep drift out of the symmetry

    estimates.push_back({sample.t_ms, state.head<2>(), state.tail<2>(), cov});
  }
  return estimates;
}

std::map<TagId, Trajectory> smooth_trajectories(const std::map<TagId, Trajectory>& trajectories,
                                                const KalmanParams& params) {
  std::map<TagId, Trajectory> out;
  for (const auto& [tag, traj] : trajectories) {
    std::vector<StateEstimate> estimates;
    try {
      estimates = kalman_filter(traj, params);
    } catch (const NonmonotonicTime& e) {
      throw NonmonotonicTime("tag '" + tag.str() + "': " + e.what());
    }
    Trajectory smoothed;
    smoothed.tag = tag;
    smoothed.samples.reserve(estimates.size());
    for (const StateEstimate& est : estimates) {
      smoothed.samples.push_back({est.t_ms, est.position});
    }
    out.emplace(tag, std::move(smoothed));
  }
  return out;
}

}  // namespace courtmotion
