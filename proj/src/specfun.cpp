#include "covlrt/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covlrt/errors.hpp"

namespace covlrt::specfun {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Below this argument digamma/trigamma recurse upward before using the
// asymptotic series. At 8 the omitted series terms are < 2e-15.
constexpr double kPsiShift = 8.0;

// lnGamma uses Stirling's series from here up.
constexpr double kStirlingMin = 15.0;

// eta switches to its Taylor series below this argument.
constexpr double kEtaSeriesMax = 1e-2;

constexpr int kMaxIterations = 1000000;
constexpr double kIterationTol = 1e-15;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

// lnGamma(x) - [(x - 1/2) log x - x + log(2 pi)/2] for x >= kStirlingMin.
double stirling_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 / 156.0))))));
}

// log(x^a e^-x / Gamma(a)), the common prefactor of P(a, x) and Q(a, x).
// For large a the naive form loses digits to cancellation between a log x,
// x and lnGamma(a); rewriting around x = a keeps it accurate.
double log_gamma_prefactor(double a, double x) {
  if (a < kStirlingMin) {
    return a * std::log(x) - x - ln_gamma(a);
  }
  const double d = (x - a) / a;
  return a * (std::log1p(d) - d) + 0.5 * std::log(a) - kHalfLog2Pi - stirling_correction(a);
}

double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kIterationTol) break;
  }
  return sum * std::exp(log_gamma_prefactor(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kIterationTol) break;
  }
  return h * std::exp(log_gamma_prefactor(a, x));
}

double clamp_probability(double v) { return std::clamp(v, 0.0, 1.0); }

void require_dof(double dof, const char* fn) {
  if (!(dof > 0.0) || !std::isfinite(dof)) {
    throw DomainError(std::string(fn) + ": degrees of freedom must be positive, got " +
                      std::to_string(dof));
  }
}

void require_open_probability(double alpha, const char* fn) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError(std::string(fn) + ": probability must lie in (0, 1), got " +
                      std::to_string(alpha));
  }
}

}  // namespace

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  double shift = 1.0;
  while (x < kStirlingMin) {
    shift *= x;
    x += 1.0;
  }
  const double value = (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x);
  return shift == 1.0 ? value : value - std::log(shift);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < kPsiShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r2 = 1.0 / (x * x);
  const double tail =
      r2 * (-1.0 / 12.0 +
            r2 * (1.0 / 120.0 +
                  r2 * (-1.0 / 252.0 +
                        r2 * (1.0 / 240.0 +
                              r2 * (-1.0 / 132.0 + r2 * (691.0 / 32760.0 + r2 * (-1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 / x + tail;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < kPsiShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double tail =
      r * r2 *
      (1.0 / 6.0 +
       r2 * (-1.0 / 30.0 +
             r2 * (1.0 / 42.0 +
                   r2 * (-1.0 / 30.0 + r2 * (5.0 / 66.0 + r2 * (-691.0 / 2730.0 + r2 * (7.0 / 6.0)))))));
  return acc + r + 0.5 * r2 + tail;
}

double xi(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("xi: argument must lie in [0, 1), got " + std::to_string(x));
  }
  if (x < kEtaSeriesMax) return x * x * eta(x);
  return -2.0 * (std::log1p(-x) + x);
}

double eta(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("eta: argument must lie in [0, 1), got " + std::to_string(x));
  }
  if (x < kEtaSeriesMax) {
    // eta(x) = sum_{m>=2} 2 x^(m-2) / m
    double s = 2.0 / 10.0;
    for (int m = 9; m >= 2; --m) s = s * x + 2.0 / m;
    return s;
  }
  return xi(x) / (x * x);
}

double ln_multigamma(int q, double z) {
  if (q < 1) {
    throw DomainError("ln_multigamma: dimension must be >= 1, got " + std::to_string(q));
  }
  if (!(z > 0.5 * (q - 1)) || !std::isfinite(z)) {
    throw DomainError("ln_multigamma: requires z > (q - 1) / 2, got q=" + std::to_string(q) +
                      " z=" + std::to_string(z));
  }
  double sum = 0.25 * q * (q - 1) * std::log(std::numbers::pi);
  for (int i = 1; i <= q; ++i) sum += ln_gamma(z - 0.5 * (i - 1));
  return sum;
}

double gamma_p(double a, double x) {
  require_positive(a, "gamma_p");
  if (std::isnan(x)) throw DomainError("gamma_p: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return clamp_probability(gamma_p_series(a, x));
  return clamp_probability(1.0 - gamma_q_fraction(a, x));
}

double gamma_q(double a, double x) {
  require_positive(a, "gamma_q");
  if (std::isnan(x)) throw DomainError("gamma_q: x is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return clamp_probability(1.0 - gamma_p_series(a, x));
  return clamp_probability(gamma_q_fraction(a, x));
}

double chisq_cdf(double dof, double x) {
  require_dof(dof, "chisq_cdf");
  return gamma_p(0.5 * dof, 0.5 * x);
}

double chisq_sf(double dof, double x) {
  require_dof(dof, "chisq_sf");
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chisq_pdf(double dof, double x) {
  require_dof(dof, "chisq_pdf");
  if (x <= 0.0) {
    if (dof < 2.0) return std::numeric_limits<double>::infinity();
    return dof == 2.0 ? 0.5 : 0.0;
  }
  return std::exp(log_gamma_prefactor(0.5 * dof, 0.5 * x)) / x;
}

double chisq_quantile(double dof, double alpha) {
  require_dof(dof, "chisq_quantile");
  require_open_probability(alpha, "chisq_quantile");

  // Residual is increasing in x with derivative pdf(x). Work in whichever
  // tail is smaller so the target keeps full relative precision.
  const bool upper = alpha < 0.5;
  auto residual = [&](double x) {
    return upper ? alpha - chisq_sf(dof, x) : chisq_cdf(dof, x) - (1.0 - alpha);
  };

  double lo = 0.0;
  double hi = dof + 40.0 * std::sqrt(2.0 * dof) + 100.0;
  while (residual(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }

  // Wilson-Hilferty starting point.
  const double c = 2.0 / (9.0 * dof);
  double x = dof * std::pow(std::max(0.0, 1.0 - c + normal_quantile(alpha) * std::sqrt(c)), 3.0);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < 1000; ++iter) {
    const double r = residual(x);
    if (r == 0.0) return x;
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double pdf = chisq_pdf(dof, x);
    double next = (pdf > 0.0 && std::isfinite(pdf)) ? x - r / pdf : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    x = next;
  }
  return x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 * 0.5); }

// Wichura, Algorithm AS 241 (PPND16); relative accuracy about 1e-16.
double normal_inv_cdf(double p) {
  require_open_probability(p, "normal_inv_cdf");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
              6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
            1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
          1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
    const double den =
        (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
              3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
            5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
          4.2313330701600911252e+1) * r + 1.0);
    return q * num / den;
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

double normal_quantile(double alpha) {
  require_open_probability(alpha, "normal_quantile");
  return -normal_inv_cdf(alpha);
}

}  // namespace covlrt::specfun
