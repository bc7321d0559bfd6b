#include "acdedmd/evaluation.hpp"

#include <cmath>
#include <numbers>

#include "acdedmd/errors.hpp"
#include "acdedmd/predict.hpp"

namespace acd {

double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped == -std::numbers::pi) wrapped = std::numbers::pi;
  return wrapped;
}

Eigen::VectorXd mse(const Eigen::MatrixXd& predicted,
                    const Eigen::MatrixXd& truth, const TopologySpace& space) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
    throw ValidationError("mse: predicted and truth shapes differ");
  }
  if (predicted.cols() != space.raw_dim()) {
    throw ValidationError("mse: state dimension does not match the topology");
  }
  if (predicted.rows() < 2) {
    throw ValidationError("mse: need at least one predicted row");
  }

  const Eigen::Index length = predicted.rows() - 1;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(predicted.cols());
  for (Eigen::Index t = 1; t <= length; ++t) {
    for (Eigen::Index j = 0; j < predicted.cols(); ++j) {
      double diff = predicted(t, j) - truth(t, j);
      if (space.is_angle(static_cast<int>(j))) diff = wrap_angle(diff);
      out(j) += diff * diff;
    }
  }
  return out / static_cast<double>(length);
}

Eigen::VectorXd dataset_mse(const PredictorFn& predictor,
                            const TrajectoryDataset& truth,
                            const TopologySpace& space) {
  truth.validate();
  Eigen::VectorXd total = Eigen::VectorXd::Zero(truth.state_dim());
  for (const auto& traj : truth.trajectories) {
    const Eigen::MatrixXd predicted =
        predictor(traj.states.row(0), traj.inputs);
    total += mse(predicted, traj.states, space);
  }
  return total / static_cast<double>(truth.trajectories.size());
}

Eigen::VectorXd dataset_mse(const KoopmanModel& model,
                            const TrajectoryDataset& truth) {
  const PredictorFn predictor = [&model](const Eigen::VectorXd& x0,
                                         const Eigen::MatrixXd& inputs) {
    return rollout(model, x0, inputs).states;
  };
  return dataset_mse(predictor, truth, model.space());
}

}  // namespace acd
