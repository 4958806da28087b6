#include "covlrt/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "covlrt/errors.hpp"

namespace covlrt {

CholeskyFactor CholeskyFactor::factor(const Matrix& s) {
  const Eigen::Index p = s.rows();
  if (p == 0 || s.cols() != p) {
    throw ShapeError("cholesky: expected a non-empty square matrix, got " + std::to_string(s.rows()) +
                     "x" + std::to_string(s.cols()));
  }
  if (!s.allFinite()) throw ShapeError("cholesky: matrix has non-finite entries");
  const double scale = s.cwiseAbs().maxCoeff();
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw ShapeError("cholesky: matrix is not symmetric");
  }

  const double tol =
      static_cast<double>(p) * std::numeric_limits<double>::epsilon() * s.diagonal().maxCoeff();
  Matrix l = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double pivot = s(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > tol)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " is " +
                                std::to_string(pivot) + ", matrix is not positive definite");
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    const Eigen::Index below = p - j - 1;
    if (below > 0) {
      l.col(j).tail(below) =
          (s.col(j).tail(below) - l.bottomLeftCorner(below, j) * l.row(j).head(j).transpose()) / ljj;
    }
  }
  return CholeskyFactor(std::move(l));
}

double CholeskyFactor::log_det() const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lower_.rows(); ++i) sum += std::log(lower_(i, i));
  return 2.0 * sum;
}

Matrix scatter(const Matrix& sample) {
  if (sample.rows() < 2) {
    throw ShapeError("scatter: need at least 2 observations, got " + std::to_string(sample.rows()));
  }
  const Eigen::RowVectorXd mean = sample.colwise().mean();
  const Matrix centered = sample.rowwise() - mean;
  const Eigen::Index p = sample.cols();
  Matrix a = Matrix::Zero(p, p);
  a.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
  a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
  return a;
}

double log_det_pd(const Matrix& s) { return CholeskyFactor::factor(s).log_det(); }

Matrix sample_mvn(Eigen::Index n, const Vector& mean, const CholeskyFactor& chol_sigma,
                  RngStream& rng) {
  if (n < 1) throw ShapeError("sample_mvn: need n >= 1");
  const Eigen::Index p = chol_sigma.dim();
  if (mean.size() != p) {
    throw ShapeError("sample_mvn: mean has length " + std::to_string(mean.size()) +
                     " but covariance is " + std::to_string(p) + "x" + std::to_string(p));
  }
  Matrix z(n, p);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < p; ++c) z(r, c) = rng.next_normal();
  }
  Matrix x = z * chol_sigma.lower().transpose();
  x.rowwise() += mean.transpose();
  return x;
}

}  // namespace covlrt
