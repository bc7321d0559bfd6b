#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "acdedmd/dataset.hpp"
#include "acdedmd/dictionary.hpp"
#include "acdedmd/linalg.hpp"

namespace acd {

/// Lifted snapshot pairs ready for the least-squares fit. Row m of
/// `regressors` is the combined lift of (x_m, u_m); row m of `targets` is the
/// state-dictionary lift of x_{m+1}. Pairs never span two trajectories;
/// `pairs_per_trajectory` records the boundary layout.
struct SnapshotPairs {
  Eigen::MatrixXd regressors;  ///< M x (N_x * N_u)
  Eigen::MatrixXd targets;     ///< M x N_x
  std::vector<int> pairs_per_trajectory;

  int count() const { return static_cast<int>(regressors.rows()); }
};

/// Koopman decomposition of the autonomous (state-to-state) operator block.
/// Column n holds the right eigenvector xi_n (eigenfunction coefficients, so
/// phi_n(x) = Psi_state(x) . xi_n), the matched left eigenvector w_n with
/// w_n^T xi_n = 1, and the mode v_n = B^T w_n.
struct Eigendecomposition {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenfunctions;  ///< xi_n as columns, N_x x N_x
  Eigen::MatrixXcd left_vectors;    ///< w_n as columns, N_x x N_x
  Eigen::MatrixXcd modes;           ///< v_n as columns, embedded_dim x N_x
};

/// A fitted lifted-space model: x'_embedded = (K^T Psi(x, u))^T B with K the
/// estimated operator and B the 0/1 matrix selecting the embedded coordinates
/// out of the state dictionary.
struct KoopmanModel {
  Dictionary state_dict;
  Dictionary input_dict;
  Eigen::MatrixXd K;  ///< (N_x * N_u) x N_x
  Eigen::MatrixXd B;  ///< N_x x embedded_dim
  double period = 0.0;
  double residual = 0.0;  ///< training residual J = 1/2 sum ||Phi - Psi K||^2
  std::optional<Eigendecomposition> eig;

  const TopologySpace& space() const { return *state_dict.space(); }
};

/// Lift every consecutive (x_m, u_m, x_{m+1}) triple in the dataset.
/// Throws ValidationError on an empty dataset or dimension mismatches.
SnapshotPairs assemble_snapshots(const TrajectoryDataset& dataset,
                                 const Dictionary& state_dict,
                                 const Dictionary& input_dict);

/// Least-squares estimate K = pinv(G) A with
///   G = (1/M) sum Psi_m^T Psi_m,   A = (1/M) sum Psi_m^T Phi_{m+1},
/// G inverted by truncated SVD at `rel_tol`. Accumulation is pairwise over
/// row blocks to keep round-off flat in M.
KoopmanModel fit(const SnapshotPairs& pairs, const Dictionary& state_dict,
                 const Dictionary& input_dict, double period,
                 double rel_tol = kDefaultPinvRelTol);

/// Training residual J = 1/2 sum_m ||Phi_m - Psi_m K||^2 for a candidate K.
double residual(const SnapshotPairs& pairs, const Eigen::MatrixXd& K);

/// The square state-to-state block of K: the rows pairing each state
/// dictionary entry with the input dictionary's constant function.
Eigen::MatrixXd autonomous_operator(const KoopmanModel& model);

/// Fill model.eig with the Koopman decomposition of the autonomous block.
/// Throws NumericalError for an ill-conditioned eigenbasis.
void decompose(KoopmanModel& model,
               double condition_tol = kDefaultEigConditionTol);

}  // namespace acd
