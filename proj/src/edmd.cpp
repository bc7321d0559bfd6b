#include "acdedmd/edmd.hpp"

#include <complex>

#include "acdedmd/errors.hpp"

namespace acd {

namespace {

// Pairwise (block-recursive) accumulation of G += Psi^T Psi and
// A += Psi^T Phi over the row range [begin, end).
void accumulate_gram(const Eigen::MatrixXd& psi, const Eigen::MatrixXd& phi,
                     Eigen::Index begin, Eigen::Index end, Eigen::MatrixXd& g,
                     Eigen::MatrixXd& a) {
  constexpr Eigen::Index kBlock = 256;
  const Eigen::Index count = end - begin;
  if (count <= kBlock) {
    const auto psi_block = psi.middleRows(begin, count);
    g += psi_block.transpose() * psi_block;
    a += psi_block.transpose() * phi.middleRows(begin, count);
    return;
  }
  const Eigen::Index mid = begin + count / 2;
  Eigen::MatrixXd g_hi = Eigen::MatrixXd::Zero(g.rows(), g.cols());
  Eigen::MatrixXd a_hi = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  accumulate_gram(psi, phi, begin, mid, g, a);
  accumulate_gram(psi, phi, mid, end, g_hi, a_hi);
  g += g_hi;
  a += a_hi;
}

}  // namespace

SnapshotPairs assemble_snapshots(const TrajectoryDataset& dataset,
                                 const Dictionary& state_dict,
                                 const Dictionary& input_dict) {
  dataset.validate();
  if (dataset.state_dim() != state_dict.raw_dim()) {
    throw ValidationError("assemble_snapshots: dataset has " +
                          std::to_string(dataset.state_dim()) +
                          " state dims, dictionary expects " +
                          std::to_string(state_dict.raw_dim()));
  }
  if (dataset.input_dim() != input_dict.raw_dim()) {
    throw ValidationError("assemble_snapshots: dataset has " +
                          std::to_string(dataset.input_dim()) +
                          " input dims, dictionary expects " +
                          std::to_string(input_dict.raw_dim()));
  }

  const int reg_width = combined_size(state_dict, input_dict);
  const int target_width = state_dict.size();
  SnapshotPairs pairs;
  pairs.regressors.resize(dataset.pair_count(), reg_width);
  pairs.targets.resize(dataset.pair_count(), target_width);

  Eigen::Index row = 0;
  for (const auto& traj : dataset.trajectories) {
    const Eigen::Index steps = traj.states.rows() - 1;
    for (Eigen::Index m = 0; m < steps; ++m) {
      pairs.regressors.row(row) = evaluate_combined(
          state_dict, input_dict, traj.states.row(m), traj.inputs.row(m));
      pairs.targets.row(row) = state_dict.evaluate(traj.states.row(m + 1));
      ++row;
    }
    pairs.pairs_per_trajectory.push_back(static_cast<int>(steps));
  }
  return pairs;
}

KoopmanModel fit(const SnapshotPairs& pairs, const Dictionary& state_dict,
                 const Dictionary& input_dict, double period, double rel_tol) {
  const int m_count = pairs.count();
  if (m_count < 1) throw ValidationError("fit: need at least one snapshot pair");
  const int reg_width = combined_size(state_dict, input_dict);
  if (pairs.regressors.cols() != reg_width ||
      pairs.targets.cols() != state_dict.size() ||
      pairs.targets.rows() != pairs.regressors.rows()) {
    throw ValidationError("fit: snapshot shapes do not match the dictionaries");
  }
  if (!(period > 0.0)) throw ValidationError("fit: period must be positive");

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(reg_width, reg_width);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(reg_width, state_dict.size());
  accumulate_gram(pairs.regressors, pairs.targets, 0, m_count, g, a);
  g /= static_cast<double>(m_count);
  a /= static_cast<double>(m_count);

  KoopmanModel model{state_dict, input_dict,
                     pinv_truncated(g, rel_tol) * a,
                     Eigen::MatrixXd::Zero(state_dict.size(),
                                           state_dict.embedded_dim()),
                     period, 0.0, std::nullopt};
  for (int k = 0; k < state_dict.embedded_dim(); ++k) {
    model.B(state_dict.coordinate_entry(k), k) = 1.0;
  }
  model.residual = residual(pairs, model.K);
  return model;
}

double residual(const SnapshotPairs& pairs, const Eigen::MatrixXd& K) {
  if (pairs.regressors.cols() != K.rows() || pairs.targets.cols() != K.cols()) {
    throw ValidationError("residual: K shape does not match the snapshots");
  }
  return 0.5 * (pairs.targets - pairs.regressors * K).squaredNorm();
}

Eigen::MatrixXd autonomous_operator(const KoopmanModel& model) {
  const std::vector<int> rows =
      state_block_indices(model.state_dict, model.input_dict);
  Eigen::MatrixXd k_auto(model.state_dict.size(), model.state_dict.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    k_auto.row(static_cast<Eigen::Index>(i)) = model.K.row(rows[i]);
  }
  return k_auto;
}

void decompose(KoopmanModel& model, double condition_tol) {
  const EigenPairs pairs =
      eig_with_left(autonomous_operator(model), condition_tol);
  Eigendecomposition eig;
  eig.eigenvalues = pairs.values;
  eig.eigenfunctions = pairs.right;
  eig.left_vectors = pairs.left;
  eig.modes =
      model.B.transpose().cast<std::complex<double>>() * pairs.left;
  model.eig = std::move(eig);
}

}  // namespace acd
