#include "acdedmd/predict.hpp"

#include <complex>
#include <string>

#include "acdedmd/errors.hpp"

namespace acd {

Eigen::VectorXd step(const KoopmanModel& model, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u) {
  const Eigen::VectorXd psi =
      evaluate_combined(model.state_dict, model.input_dict, x, u);
  const Eigen::VectorXd embedded = model.B.transpose() * (model.K.transpose() * psi);
  if (!embedded.allFinite()) {
    throw NumericalError("prediction diverged (non-finite state)");
  }
  return unembed(model.space(), embedded);
}

Rollout rollout(const KoopmanModel& model, const Eigen::VectorXd& x0,
                const Eigen::MatrixXd& inputs) {
  if (x0.size() != model.state_dict.raw_dim()) {
    throw ValidationError("rollout: initial state has length " +
                          std::to_string(x0.size()) + ", expected " +
                          std::to_string(model.state_dict.raw_dim()));
  }
  if (inputs.rows() > 0 && inputs.cols() != model.input_dict.raw_dim()) {
    throw ValidationError("rollout: inputs have " +
                          std::to_string(inputs.cols()) + " columns, expected " +
                          std::to_string(model.input_dict.raw_dim()));
  }

  Rollout out;
  out.period = model.period;
  out.inputs = inputs;
  out.states.resize(inputs.rows() + 1, x0.size());
  out.states.row(0) = x0;
  for (Eigen::Index m = 0; m < inputs.rows(); ++m) {
    try {
      out.states.row(m + 1) =
          step(model, out.states.row(m), inputs.row(m));
    } catch (const NumericalError& e) {
      throw NumericalError("rollout: step " + std::to_string(m) + ": " +
                           e.what());
    }
  }
  return out;
}

Eigen::VectorXd autonomous_step_embedded(const KoopmanModel& model,
                                         const Eigen::VectorXd& x) {
  const Eigen::VectorXd psi = model.state_dict.evaluate(x);
  return model.B.transpose() * (autonomous_operator(model).transpose() * psi);
}

Eigen::VectorXd spectral_step_embedded(const KoopmanModel& model,
                                       const Eigen::VectorXd& x) {
  if (!model.eig.has_value()) {
    throw ValidationError("spectral_step_embedded: model has no decomposition");
  }
  const auto& eig = *model.eig;
  const Eigen::VectorXcd psi =
      model.state_dict.evaluate(x).cast<std::complex<double>>();
  // phi_n(x) = Psi_state(x) . xi_n, then sum_n v_n lambda_n phi_n(x).
  const Eigen::VectorXcd phi = eig.eigenfunctions.transpose() * psi;
  const Eigen::VectorXcd embedded =
      eig.modes * eig.eigenvalues.cwiseProduct(phi);
  return embedded.real();
}

}  // namespace acd
