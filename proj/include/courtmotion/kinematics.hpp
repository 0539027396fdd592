#pragma once

#include "courtmotion/types.hpp"

#include <Eigen/Core>

#include <map>
#include <vector>

namespace courtmotion {

struct KalmanParams {
  double process_noise_accel = 4.0;   // white-noise acceleration variance, m^2/s^4
  double measurement_noise = 0.09;    // position measurement variance, m^2
  double initial_position_var = 1.0;  // m^2
  double initial_velocity_var = 4.0;  // m^2/s^2
};

struct StateEstimate {
  std::int64_t t_ms = 0;
  Vec2 position{0.0, 0.0};
  Vec2 velocity{0.0, 0.0};
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();  // state order (x, y, vx, vy)
};

// Constant-velocity Kalman filter over one trajectory. dt comes from the
// actual timestamps; the first estimate sits at the first measurement with
// zero velocity and the configured variances. The covariance is symmetrized
// after every update. Throws NonmonotonicTime unless timestamps strictly
// increase.
std::vector<StateEstimate> kalman_filter(const Trajectory& trajectory,
                                         const KalmanParams& params);

// Replaces each trajectory's positions by the filtered ones; timestamps are
// unchanged. Filter errors are rethrown with the offending tag id.
std::map<TagId, Trajectory> smooth_trajectories(const std::map<TagId, Trajectory>& trajectories,
                                                const KalmanParams& params);

}  // namespace courtmotion
