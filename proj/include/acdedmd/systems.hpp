#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "acdedmd/dataset.hpp"

namespace acd {

/// Differential-drive kinematic parameters (wheel radius and separation).
struct DiffDriveParams {
  double r = 0.062;  ///< wheel radius, m
  double L = 0.228;  ///< wheel separation, m
};

/// Planar 2R arm parameters. Link masses/lengths are configurable; the
/// defaults put both links at 1 kg / 1 m under standard gravity.
struct ArmParams {
  double m1 = 1.0;       ///< link-1 mass, kg
  double m2 = 1.0;       ///< link-2 mass, kg
  double l1 = 1.0;       ///< link-1 length, m
  double l2 = 1.0;       ///< link-2 length, m
  double gravity = 9.81; ///< m/s^2
};

/// Kinematics of the differential drive: state (x, y, phi), input
/// (omega_r, omega_l) wheel speeds in rad/s. Returns (dx, dy, dphi).
Eigen::Vector3d diffdrive_deriv(const DiffDriveParams& p,
                                const Eigen::Vector3d& state,
                                const Eigen::Vector2d& u);

/// Arm mass matrix M(theta); symmetric positive definite for valid params.
Eigen::Matrix2d arm_mass_matrix(const ArmParams& p,
                                const Eigen::Vector2d& theta);
/// Coriolis/centrifugal vector c(theta, theta_dot).
Eigen::Vector2d arm_coriolis(const ArmParams& p, const Eigen::Vector2d& theta,
                             const Eigen::Vector2d& theta_dot);
/// Gravity torque vector g(theta).
Eigen::Vector2d arm_gravity(const ArmParams& p, const Eigen::Vector2d& theta);

/// Forward dynamics of the 2R arm: state (th1, th2, dth1, dth2), input
/// (tau1, tau2). Solves theta_dd = M^{-1}(tau - c - g).
Eigen::Vector4d arm_deriv(const ArmParams& p, const Eigen::Vector4d& state,
                          const Eigen::Vector2d& tau);

using DerivFn =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// A simulatable system: continuous-time dynamics plus the metadata the
/// dataset and dictionaries need.
struct System {
  std::string name;
  DerivFn deriv;
  Eigen::VectorXd initial_state;
  std::vector<std::string> state_names;
  std::vector<std::string> input_names;
  std::string topology;
};

System diffdrive_system(const DiffDriveParams& p = {});
System arm_system(const ArmParams& p = {});

/// Number of RK4 substeps per sampling period.
inline constexpr int kDefaultSubsteps = 10;

/// Classical fixed-step RK4 under zero-order-hold inputs: inputs.row(m) is
/// held over [m*T, (m+1)*T) and integrated with `substeps` internal steps.
/// Samples are recorded every period, so the result has inputs.rows() + 1
/// state rows. Throws NumericalError (with a time stamp) on divergence.
Trajectory integrate(const DerivFn& deriv, const Eigen::VectorXd& x0,
                     const Eigen::MatrixXd& inputs, double period,
                     int substeps = kDefaultSubsteps);

/// Random-input excitation protocol: i.i.d. Gaussian input per sampling
/// interval, diagonal covariance, fixed master seed.
struct SimProtocol {
  int trajectory_count = 0;
  double duration = 0.0;           ///< seconds; must be a multiple of period
  double period = 0.0;             ///< sampling period T, s
  Eigen::VectorXd input_mean;
  Eigen::VectorXd input_variance;  ///< diagonal of the covariance
  std::uint64_t seed = 0;

  /// Samples per trajectory minus one; throws ValidationError when invalid.
  int steps() const;
};

/// Simulate `trajectory_count` trajectories from the system's initial state
/// with fresh inputs per interval. Each trajectory draws from its own RNG
/// stream seeded by (master seed, trajectory index), so results do not
/// depend on generation order.
TrajectoryDataset generate_dataset(const System& system,
                                   const SimProtocol& protocol);

}  // namespace acd
