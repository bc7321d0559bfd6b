#include "acdedmd/systems.hpp"

#include <cmath>
#include <random>

#include "acdedmd/errors.hpp"

namespace acd {

Eigen::Vector3d diffdrive_deriv(const DiffDriveParams& p,
                                const Eigen::Vector3d& state,
                                const Eigen::Vector2d& u) {
  if (!(p.r > 0.0) || !(p.L > 0.0)) {
    throw ValidationError("diffdrive: r and L must be positive");
  }
  const double phi = state(2);
  const double sum = u(0) + u(1);   // omega_r + omega_l
  const double diff = u(0) - u(1);  // omega_r - omega_l
  Eigen::Vector3d deriv;
  deriv << 0.5 * p.r * sum * std::cos(phi),
           0.5 * p.r * sum * std::sin(phi),
           (p.r / p.L) * diff;
  return deriv;
}

Eigen::Matrix2d arm_mass_matrix(const ArmParams& p,
                                const Eigen::Vector2d& theta) {
  const double c2 = std::cos(theta(1));
  Eigen::Matrix2d m;
  m(0, 0) = p.m1 * p.l1 * p.l1 +
            p.m2 * (p.l1 * p.l1 + 2.0 * p.l1 * p.l2 * c2 + p.l2 * p.l2);
  m(0, 1) = p.m2 * (p.l1 * p.l2 * c2 + p.l2 * p.l2);
  m(1, 0) = m(0, 1);
  m(1, 1) = p.m2 * p.l2 * p.l2;
  return m;
}

Eigen::Vector2d arm_coriolis(const ArmParams& p, const Eigen::Vector2d& theta,
                             const Eigen::Vector2d& theta_dot) {
  const double s2 = std::sin(theta(1));
  Eigen::Vector2d c;
  c << -p.m2 * p.l1 * p.l2 * s2 *
           (2.0 * theta_dot(0) * theta_dot(1) + theta_dot(1) * theta_dot(1)),
       p.m2 * p.l1 * p.l2 * theta_dot(0) * theta_dot(0) * s2;
  return c;
}

Eigen::Vector2d arm_gravity(const ArmParams& p, const Eigen::Vector2d& theta) {
  const double c1 = std::cos(theta(0));
  const double c12 = std::cos(theta(0) + theta(1));
  Eigen::Vector2d g;
  g << (p.m1 + p.m2) * p.l1 * p.gravity * c1 + p.m2 * p.gravity * p.l2 * c12,
       p.m2 * p.gravity * p.l2 * c12;
  return g;
}

Eigen::Vector4d arm_deriv(const ArmParams& p, const Eigen::Vector4d& state,
                          const Eigen::Vector2d& tau) {
  if (!(p.m1 > 0.0 && p.m2 > 0.0 && p.l1 > 0.0 && p.l2 > 0.0)) {
    throw ValidationError("arm: masses and lengths must be positive");
  }
  const Eigen::Vector2d theta = state.head<2>();
  const Eigen::Vector2d theta_dot = state.tail<2>();
  const Eigen::Matrix2d m = arm_mass_matrix(p, theta);
  // M is SPD for positive masses/lengths; the determinant guard only fires
  // on degenerate numeric inputs.
  const double det = m.determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw NumericalError("arm: singular mass matrix");
  }
  const Eigen::Vector2d rhs =
      tau - arm_coriolis(p, theta, theta_dot) - arm_gravity(p, theta);
  const Eigen::Vector2d theta_dd = m.llt().solve(rhs);
  Eigen::Vector4d deriv;
  deriv << theta_dot, theta_dd;
  return deriv;
}

System diffdrive_system(const DiffDriveParams& p) {
  System system;
  system.name = "diffdrive";
  system.deriv = [p](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return diffdrive_deriv(p, x, u);
  };
  system.initial_state = Eigen::Vector3d::Zero();
  system.state_names = {"x", "y", "phi"};
  system.input_names = {"u_wr", "u_wl"};
  system.topology = "R^2 x S^1";
  return system;
}

System arm_system(const ArmParams& p) {
  System system;
  system.name = "arm2r";
  system.deriv = [p](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return arm_deriv(p, x, u);
  };
  system.initial_state = Eigen::Vector4d::Zero();
  system.state_names = {"th1", "th2", "dth1", "dth2"};
  system.input_names = {"u_tau1", "u_tau2"};
  system.topology = "S^1 x S^1 x R^2";
  return system;
}

Trajectory integrate(const DerivFn& deriv, const Eigen::VectorXd& x0,
                     const Eigen::MatrixXd& inputs, double period,
                     int substeps) {
  if (!(period > 0.0)) throw ValidationError("integrate: period must be positive");
  if (substeps < 1) throw ValidationError("integrate: substeps must be >= 1");

  Trajectory traj;
  traj.period = period;
  traj.states.resize(inputs.rows() + 1, x0.size());
  traj.inputs = inputs;
  traj.states.row(0) = x0;

  const double h = period / substeps;
  Eigen::VectorXd x = x0;
  for (Eigen::Index m = 0; m < inputs.rows(); ++m) {
    const Eigen::VectorXd u = inputs.row(m);
    for (int s = 0; s < substeps; ++s) {
      const Eigen::VectorXd k1 = deriv(x, u);
      const Eigen::VectorXd k2 = deriv(x + 0.5 * h * k1, u);
      const Eigen::VectorXd k3 = deriv(x + 0.5 * h * k2, u);
      const Eigen::VectorXd k4 = deriv(x + h * k3, u);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!x.allFinite()) {
      throw NumericalError("integrate: state diverged at t = " +
                           format_double((m + 1) * period) + " s");
    }
    traj.states.row(m + 1) = x;
  }
  return traj;
}

int SimProtocol::steps() const {
  if (trajectory_count < 1) {
    throw ValidationError("protocol: trajectory_count must be >= 1");
  }
  if (!(period > 0.0)) throw ValidationError("protocol: period must be positive");
  if (!(duration > 0.0)) throw ValidationError("protocol: duration must be positive");
  const double ratio = duration / period;
  const int n = static_cast<int>(std::lround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    throw ValidationError("protocol: duration must be a positive multiple of the period");
  }
  if ((input_variance.array() < 0.0).any()) {
    throw ValidationError("protocol: input variance must be non-negative");
  }
  return n;
}

TrajectoryDataset generate_dataset(const System& system,
                                   const SimProtocol& protocol) {
  const int steps = protocol.steps();
  const int input_dim = static_cast<int>(protocol.input_mean.size());
  if (protocol.input_variance.size() != input_dim) {
    throw ValidationError("protocol: input mean and variance sizes differ");
  }
  if (input_dim != static_cast<int>(system.input_names.size())) {
    throw ValidationError("protocol: input dimension does not match the system");
  }

  TrajectoryDataset dataset;
  dataset.state_names = system.state_names;
  dataset.input_names = system.input_names;
  dataset.source = "simulated:" + system.name;
  dataset.seed = protocol.seed;
  dataset.topology = system.topology;

  const Eigen::VectorXd sigma = protocol.input_variance.cwiseSqrt();
  for (int traj_idx = 0; traj_idx < protocol.trajectory_count; ++traj_idx) {
    // Independent stream per trajectory: the draw order inside one
    // trajectory never affects any other.
    std::seed_seq seq{static_cast<std::uint32_t>(protocol.seed),
                      static_cast<std::uint32_t>(protocol.seed >> 32),
                      static_cast<std::uint32_t>(traj_idx)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::MatrixXd inputs(steps, input_dim);
    for (int m = 0; m < steps; ++m) {
      for (int j = 0; j < input_dim; ++j) {
        inputs(m, j) = protocol.input_mean(j) + sigma(j) * normal(rng);
      }
    }
    try {
      dataset.trajectories.push_back(
          integrate(system.deriv, system.initial_state, inputs, protocol.period));
    } catch (const NumericalError& e) {
      throw NumericalError("generate_dataset: trajectory " +
                           std::to_string(traj_idx) + ": " + e.what());
    }
  }
  return dataset;
}

}  // namespace acd
