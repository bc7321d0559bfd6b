#include "acdedmd/comparators.hpp"

#include <cmath>

#include "acdedmd/errors.hpp"
#include "acdedmd/systems.hpp"
#include "acdedmd/topology.hpp"

namespace acd {

Eigen::VectorXd SindyLibrary::evaluate(const Eigen::VectorXd& z) const {
  if (z.size() != z_dim) {
    throw ValidationError("sindy library: point has length " +
                          std::to_string(z.size()) + ", expected " +
                          std::to_string(z_dim));
  }
  Eigen::VectorXd theta(width());
  theta(0) = 1.0;
  theta.segment(1, z_dim) = z;
  theta.segment(1 + z_dim, z_dim) = z.array().square();
  theta.segment(1 + 2 * z_dim, z_dim) = z.array().sin();
  theta.segment(1 + 3 * z_dim, z_dim) = z.array().cos();
  return theta;
}

std::vector<std::string> SindyLibrary::labels(
    const std::vector<std::string>& z_names) const {
  if (static_cast<int>(z_names.size()) != z_dim) {
    throw ValidationError("sindy library: name count does not match z_dim");
  }
  std::vector<std::string> out;
  out.reserve(width());
  out.push_back("1");
  for (const auto& n : z_names) out.push_back(n);
  for (const auto& n : z_names) out.push_back(n + "^2");
  for (const auto& n : z_names) out.push_back("sin(" + n + ")");
  for (const auto& n : z_names) out.push_back("cos(" + n + ")");
  return out;
}

int SindyModel::nonzero_count() const {
  return static_cast<int>((coefficients.array() != 0.0).count());
}

namespace {

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

}  // namespace

LassoResult lasso_cd(const Eigen::MatrixXd& theta, const Eigen::VectorXd& y,
                     double lambda, double tol, int max_sweeps) {
  if (theta.rows() != y.size() || theta.rows() < 1) {
    throw ValidationError("lasso: row counts of theta and y must match");
  }
  if (lambda < 0.0) throw ValidationError("lasso: lambda must be >= 0");

  const Eigen::Index m = theta.rows();
  const Eigen::Index p = theta.cols();
  LassoResult result;

  if (lambda == 0.0) {
    result.coefficients = theta.completeOrthogonalDecomposition().solve(y);
    const double rss = (y - theta * result.coefficients).squaredNorm();
    result.objectives.push_back(rss / (2.0 * static_cast<double>(m)));
    return result;
  }

  // Standardize columns to unit RMS so every coordinate update has unit
  // curvature; coefficients are mapped back to the raw scale at the end.
  Eigen::VectorXd scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    scale(j) = std::sqrt(theta.col(j).squaredNorm() / static_cast<double>(m));
  }
  Eigen::MatrixXd theta_std = theta;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (scale(j) > 0.0) theta_std.col(j) /= scale(j);
  }

  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd residual = y;
  const double inv_m = 1.0 / static_cast<double>(m);
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double max_delta = 0.0;
    double max_coef = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (scale(j) == 0.0) continue;
      const double old = b(j);
      const double rho = inv_m * theta_std.col(j).dot(residual) + old;
      const double next = soft_threshold(rho, lambda);
      if (next != old) {
        residual += theta_std.col(j) * (old - next);
        b(j) = next;
      }
      max_delta = std::max(max_delta, std::abs(next - old));
      max_coef = std::max(max_coef, std::abs(next));
    }
    result.objectives.push_back(inv_m * 0.5 * residual.squaredNorm() +
                                lambda * b.lpNorm<1>());
    result.sweeps = sweep + 1;
    if (max_delta <= tol * std::max(1.0, max_coef)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("lasso: no convergence within " +
                         std::to_string(max_sweeps) + " sweeps");
  }
  result.coefficients = b;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (scale(j) > 0.0) result.coefficients(j) /= scale(j);
  }
  return result;
}

SindyModel sindy_fit(const TrajectoryDataset& dataset, double lambda_sparse) {
  dataset.validate();
  const double period = dataset.trajectories[0].period;
  for (const auto& traj : dataset.trajectories) {
    if (traj.period != period) {
      throw ValidationError("sindy_fit: all trajectories must share one period");
    }
  }

  const int ds = dataset.state_dim();
  const int du = dataset.input_dim();
  SindyModel model;
  model.library.z_dim = ds + du;
  model.state_dim = ds;
  model.input_dim = du;
  model.period = period;
  model.lambda = lambda_sparse;

  // One regression row per (state, input) sample; the terminal state of each
  // trajectory has no matching input and is only used inside the difference.
  int rows = 0;
  for (const auto& traj : dataset.trajectories) {
    rows += static_cast<int>(traj.inputs.rows());
  }
  Eigen::MatrixXd theta(rows, model.library.width());
  Eigen::MatrixXd xdot(rows, ds);
  Eigen::Index row = 0;
  Eigen::VectorXd z(ds + du);
  for (const auto& traj : dataset.trajectories) {
    const Eigen::Index n = traj.states.rows();
    for (Eigen::Index t = 0; t + 1 < n; ++t) {
      if (t == 0) {
        xdot.row(row) = (traj.states.row(1) - traj.states.row(0)) / period;
      } else {
        xdot.row(row) =
            (traj.states.row(t + 1) - traj.states.row(t - 1)) / (2.0 * period);
      }
      z.head(ds) = traj.states.row(t);
      z.tail(du) = traj.inputs.row(t);
      theta.row(row) = model.library.evaluate(z);
      ++row;
    }
  }

  model.coefficients.resize(model.library.width(), ds);
  for (int i = 0; i < ds; ++i) {
    model.coefficients.col(i) =
        lasso_cd(theta, xdot.col(i), lambda_sparse).coefficients;
  }
  model.coefficients =
      (model.coefficients.array().abs() < 1e-6)
          .select(Eigen::MatrixXd::Zero(model.coefficients.rows(),
                                        model.coefficients.cols()),
                  model.coefficients);
  return model;
}

Rollout sindy_rollout(const SindyModel& model, const Eigen::VectorXd& x0,
                      const Eigen::MatrixXd& inputs) {
  if (x0.size() != model.state_dim) {
    throw ValidationError("sindy_rollout: initial state has length " +
                          std::to_string(x0.size()) + ", expected " +
                          std::to_string(model.state_dim));
  }
  if (inputs.rows() > 0 && inputs.cols() != model.input_dim) {
    throw ValidationError("sindy_rollout: input dimension mismatch");
  }
  const DerivFn deriv = [&model](const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& u) -> Eigen::VectorXd {
    Eigen::VectorXd z(model.state_dim + model.input_dim);
    z.head(model.state_dim) = x;
    z.tail(model.input_dim) = u;
    return model.coefficients.transpose() * model.library.evaluate(z);
  };
  const Trajectory traj = integrate(deriv, x0, inputs, model.period);
  Rollout out;
  out.states = traj.states;
  out.inputs = traj.inputs;
  out.period = traj.period;
  return out;
}

std::pair<Dictionary, Dictionary> baseline_hermite_dictionaries(int state_dim,
                                                                int input_dim,
                                                                int order) {
  TopologySpace raw_space({TopologyAtom{TopologyAtom::Kind::kEuclidean,
                                        state_dim}});
  return {Dictionary::direct_sum_state(std::move(raw_space), order),
          Dictionary::direct_sum_input(input_dim, order)};
}

}  // namespace acd
