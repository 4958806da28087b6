#pragma once

// Scalar special functions used by the covariance-equality tests.
// Every function is pure and reentrant; invalid arguments throw DomainError.

namespace covlrt::specfun {

double ln_gamma(double x);

/// psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

/// xi(x) = -2 (log(1 - x) + x) on [0, 1).
double xi(double x);

/// eta(x) = xi(x) / x^2 on [0, 1), with eta(0) = 1.
double eta(double x);

/// log of the multivariate gamma function Gamma_q(z), z > (q - 1) / 2.
double ln_multigamma(int q, double z);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so that small tail probabilities keep their relative accuracy.
double gamma_q(double a, double x);

double chisq_cdf(double dof, double x);

/// Upper tail 1 - chisq_cdf(dof, x).
double chisq_sf(double dof, double x);

double chisq_pdf(double dof, double x);

/// Upper alpha quantile: returns x with chisq_cdf(dof, x) = 1 - alpha.
double chisq_quantile(double dof, double alpha);

double normal_cdf(double x);

/// Inverse of the standard normal cdf, p in (0, 1).
double normal_inv_cdf(double p);

/// Upper alpha quantile z_alpha: normal_cdf(z) = 1 - alpha.
double normal_quantile(double alpha);

}  // namespace covlrt::specfun
