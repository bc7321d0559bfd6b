#include "acdedmd/linalg.hpp"

#include <cmath>
#include <string>

#include "acdedmd/errors.hpp"

namespace acd {

Eigen::MatrixXd pinv_truncated(const Eigen::MatrixXd& m, double rel_tol) {
  if (!m.allFinite()) {
    throw ValidationError("pinv_truncated: matrix has non-finite entries");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw ValidationError("pinv_truncated: rel_tol must lie in (0, 1)");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("pinv_truncated: SVD failed to converge");
  }

  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  if (sigma_max == 0.0) {
    return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  }

  const double cutoff = rel_tol * sigma_max;
  Eigen::VectorXd inv_sigma(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    inv_sigma(i) = sigma(i) < cutoff ? 0.0 : 1.0 / sigma(i);
  }
  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

EigenPairs eig_with_left(const Eigen::MatrixXd& m, double condition_tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError("eig_with_left: matrix must be square");
  }
  if (!m.allFinite()) {
    throw ValidationError("eig_with_left: matrix has non-finite entries");
  }

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_with_left: eigensolver failed to converge");
  }

  EigenPairs out;
  out.values = solver.eigenvalues();
  out.right = solver.eigenvectors();  // unit-norm columns

  // Rows of V^{-1} are left eigenvectors with w_n^T xi_n = 1 built in. For a
  // (near-)defective matrix some row blows up; with unit right vectors,
  // 1 / ||w_n|| is exactly the |w^T xi| overlap of the normalized pair.
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(out.right);
  if (!lu.isInvertible()) {
    // Exactly singular eigenvector matrix: name the most parallel pair.
    Eigen::Index worst = 0;
    double best_overlap = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < m.rows(); ++j) {
        const double overlap =
            std::abs((out.right.col(i).adjoint() * out.right.col(j))(0, 0));
        if (overlap > best_overlap) {
          best_overlap = overlap;
          worst = j;
        }
      }
    }
    throw NumericalError("ill-conditioned eigenbasis: eigenvector " +
                         std::to_string(worst) +
                         " is linearly dependent on the others");
  }
  const Eigen::MatrixXcd v_inv =
      lu.solve(Eigen::MatrixXcd::Identity(m.rows(), m.rows()));
  for (Eigen::Index n = 0; n < m.rows(); ++n) {
    const double row_norm = v_inv.row(n).norm();
    if (!std::isfinite(row_norm) || row_norm * condition_tol > 1.0) {
      throw NumericalError(
          "ill-conditioned eigenbasis: eigenvector " + std::to_string(n) +
          " is nearly parallel to another (|w^T xi| = " +
          std::to_string(std::isfinite(row_norm) ? 1.0 / row_norm : 0.0) +
          ")");
    }
  }
  out.left = v_inv.transpose();
  return out;
}

}  // namespace acd
