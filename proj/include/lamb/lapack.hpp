#pragma once

#include <Eigen/Dense>

#include "lamb/core.hpp"

namespace lamb {

/// Result of the real generalized eigenproblem a x = z b x.
/// Eigenvalue j is alpha(j) / beta(j); beta(j) == 0 marks an infinite one.
struct QZResult {
  Eigen::VectorXcd alpha;
  Eigen::VectorXd beta;
  Eigen::MatrixXcd right;  ///< columns are right eigenvectors (if requested)
  Eigen::MatrixXcd left;   ///< columns y with y^H a = z y^H b (if requested)
};

/// Wraps LAPACK dggev.  Throws std::runtime_error on a nonzero info.
QZResult generalized_eigen(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           bool want_right, bool want_left);

}  // namespace lamb
