#pragma once

#include <Eigen/Dense>

#include "acdedmd/edmd.hpp"

namespace acd {

/// A multi-step prediction: states.row(0) is the initial state and
/// states.row(m+1) the prediction after applying inputs.row(m), so the state
/// sequence is always one longer than the input sequence.
struct Rollout {
  Eigen::MatrixXd states;  ///< (L+1) x raw_dim
  Eigen::MatrixXd inputs;  ///< L x input_dim
  double period = 0.0;
};

/// One sampling period of lifted prediction:
///   x' = unembed( (K^T Psi(x, u))^T B ).
/// Throws NumericalError if the predicted state is non-finite.
Eigen::VectorXd step(const KoopmanModel& model, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u);

/// Iterate `step` over an input sequence, re-lifting from the recovered raw
/// state each period (the lifted vector leaves the dictionary's image after
/// one multiply, so pure lifted-space propagation drifts).
/// Divergence errors carry the failing step index.
Rollout rollout(const KoopmanModel& model, const Eigen::VectorXd& x0,
                const Eigen::MatrixXd& inputs);

/// Autonomous one-step prediction of the embedded coordinates through the
/// state-to-state operator block.
Eigen::VectorXd autonomous_step_embedded(const KoopmanModel& model,
                                         const Eigen::VectorXd& x);

/// The same prediction through the Koopman mode sum  sum_n v_n lambda_n
/// phi_n(x). Requires decompose() to have run; equals
/// autonomous_step_embedded up to eigenbasis round-off.
Eigen::VectorXd spectral_step_embedded(const KoopmanModel& model,
                                       const Eigen::VectorXd& x);

}  // namespace acd
