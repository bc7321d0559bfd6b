#pragma once

#include <Eigen/Dense>
#include <functional>

#include "acdedmd/dataset.hpp"
#include "acdedmd/edmd.hpp"
#include "acdedmd/topology.hpp"

namespace acd {

/// Wrap an angle into (-pi, pi].
double wrap_angle(double angle);

/// Per-component mean squared error between a predicted and a reference
/// state sequence of equal shape. Row 0 (the shared initial state) is
/// excluded, so the average runs over the L predicted rows. Angle
/// components are compared through wrapped differences.
Eigen::VectorXd mse(const Eigen::MatrixXd& predicted,
                    const Eigen::MatrixXd& truth, const TopologySpace& space);

/// Predictor signature for model-agnostic evaluation: maps (x0, inputs) to
/// an (L+1) x dim state sequence.
using PredictorFn =
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::MatrixXd&)>;

/// Drive the predictor with every trajectory's logged inputs from its
/// initial state and average the per-trajectory MSE vectors.
Eigen::VectorXd dataset_mse(const PredictorFn& predictor,
                            const TrajectoryDataset& truth,
                            const TopologySpace& space);

/// Same, with the lifted linear predictor of a fitted model.
Eigen::VectorXd dataset_mse(const KoopmanModel& model,
                            const TrajectoryDataset& truth);

}  // namespace acd
