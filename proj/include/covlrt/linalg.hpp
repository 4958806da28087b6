#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "covlrt/rng.hpp"

namespace covlrt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Lower Cholesky factor L with strictly positive diagonal, S = L L'.
class CholeskyFactor {
 public:
  /// Throws NotPositiveDefinite when a pivot is <= dim * eps * max|diag(S)|,
  /// ShapeError when S is not square or not symmetric within 1e-9 max|S|.
  static CholeskyFactor factor(const Matrix& s);

  Eigen::Index dim() const { return lower_.rows(); }
  const Matrix& lower() const { return lower_; }

  /// 2 * sum(log diag L) = log|S|.
  double log_det() const;

 private:
  explicit CholeskyFactor(Matrix lower) : lower_(std::move(lower)) {}
  Matrix lower_;
};

/// Centered cross-product sum_j (x_j - xbar)(x_j - xbar)' of the rows of
/// `sample`. The result is exactly symmetric.
Matrix scatter(const Matrix& sample);

inline CholeskyFactor cholesky(const Matrix& s) { return CholeskyFactor::factor(s); }

/// log|S| for symmetric positive definite S.
double log_det_pd(const Matrix& s);

/// n rows drawn from N(mean, L L'), each row = mean + L z with z drawn
/// coordinate by coordinate from `rng`.
Matrix sample_mvn(Eigen::Index n, const Vector& mean, const CholeskyFactor& chol_sigma,
                  RngStream& rng);

}  // namespace covlrt
