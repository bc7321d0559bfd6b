#pragma once

#include <Eigen/Dense>

namespace acd {

/// Relative singular-value cutoff used when no explicit tolerance is given.
inline constexpr double kDefaultPinvRelTol = 1e-10;

/// Minimum acceptable |w_n^T xi_n| (unit-norm vectors) before the eigenbasis
/// is declared too close to defective to trust.
inline constexpr double kDefaultEigConditionTol = 1e-8;

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// rel_tol * sigma_max are truncated to zero.
///
/// Throws ValidationError for non-finite input or rel_tol outside (0, 1),
/// NumericalError if the SVD fails to converge.
Eigen::MatrixXd pinv_truncated(const Eigen::MatrixXd& m,
                               double rel_tol = kDefaultPinvRelTol);

/// Eigendecomposition with matched left/right eigenvectors.
///
/// values[n] with right column right.col(n) satisfy K xi = lambda xi; left
/// column left.col(n) satisfies w^T K = lambda w^T and is scaled so that
/// w_n^T xi_n = 1 (plain transpose, no conjugation). Left vectors are the
/// rows of the inverse of the right-eigenvector matrix, which enforces the
/// pairing by construction.
struct EigenPairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right;
  Eigen::MatrixXcd left;
};

/// Throws ValidationError for a non-square or non-finite matrix and
/// NumericalError("ill-conditioned eigenbasis ...") naming the first
/// offending eigenvector when the matrix is defective or nearly so.
EigenPairs eig_with_left(const Eigen::MatrixXd& m,
                         double condition_tol = kDefaultEigConditionTol);

}  // namespace acd
