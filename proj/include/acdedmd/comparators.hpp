#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "acdedmd/dataset.hpp"
#include "acdedmd/dictionary.hpp"
#include "acdedmd/predict.hpp"

namespace acd {

/// Bumped whenever the candidate-function ordering below changes.
inline constexpr int kSindyLibraryVersion = 1;

/// Candidate functions over z = (state, input): constant first, then every
/// z_i, every z_i^2, every sin(z_i), every cos(z_i). Width 1 + 4 dim(z).
struct SindyLibrary {
  int z_dim = 0;

  int width() const { return 1 + 4 * z_dim; }
  Eigen::VectorXd evaluate(const Eigen::VectorXd& z) const;
  std::vector<std::string> labels(const std::vector<std::string>& z_names) const;
};

/// Sparse continuous-time model  dx/dt = Xi^T theta(x, u).
struct SindyModel {
  SindyLibrary library;
  Eigen::MatrixXd coefficients;  ///< width x state_dim (Xi)
  int state_dim = 0;
  int input_dim = 0;
  double period = 0.0;
  double lambda = 0.0;

  int nonzero_count() const;
};

/// One LASSO solve min (1/2M)||y - theta b||^2 + lambda ||b||_1 by cyclic
/// coordinate descent (soft thresholding, residual updates, columns
/// standardized to unit RMS internally). Returned coefficients are on the
/// original column scale; the per-sweep objective lets callers check the
/// monotone-decrease property.
struct LassoResult {
  Eigen::VectorXd coefficients;
  std::vector<double> objectives;  ///< objective after each sweep
  int sweeps = 0;
};

inline constexpr double kLassoTol = 1e-8;
inline constexpr int kLassoMaxSweeps = 100000;

/// Throws NumericalError when the sweep cap is hit before the relative
/// update drops below `tol`. lambda = 0 short-circuits to plain least
/// squares.
LassoResult lasso_cd(const Eigen::MatrixXd& theta, const Eigen::VectorXd& y,
                     double lambda, double tol = kLassoTol,
                     int max_sweeps = kLassoMaxSweeps);

/// Fit a SINDy model: state derivatives estimated by central differences
/// (one-sided at the first sample), one LASSO solve per state component,
/// then hard-thresholding of |coef| < 1e-6 to exactly zero.
SindyModel sindy_fit(const TrajectoryDataset& dataset, double lambda_sparse);

/// Integrate the identified ODE under zero-order-hold inputs with the same
/// RK4 contract as the simulators.
Rollout sindy_rollout(const SindyModel& model, const Eigen::VectorXd& x0,
                      const Eigen::MatrixXd& inputs);

/// The classical-EDMD baseline lifting: direct sums of Hermite polynomials up
/// to `order` over the raw states (no angle embedding) and inputs. Returns
/// the (state, input) dictionary pair for the standard fit; combined width is
/// 1 + order * (state_dim + input_dim).
std::pair<Dictionary, Dictionary> baseline_hermite_dictionaries(
    int state_dim, int input_dim, int order = 2);

}  // namespace acd
