#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "covlrt/errors.hpp"
#include "covlrt/specfun.hpp"

namespace {

using namespace covlrt::specfun;
using covlrt::DomainError;

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kZeta3 = 1.202056903159594285399738161511449991L;

// Oracles below work in long double from closed forms and never call the
// implementation under test.

long double log_factorial(int m) {
  long double s = 0.0L;
  for (int i = 2; i <= m; ++i) s += std::log(static_cast<long double>(i));
  return s;
}

long double harmonic(int m) {
  long double s = 0.0L;
  for (int i = m; i >= 1; --i) s += 1.0L / i;
  return s;
}

// Upper chi-square tail by the finite series for integer dof.
long double chisq_sf_oracle(int dof, long double x) {
  const long double h = x / 2.0L;
  if (dof % 2 == 0) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int j = 1; j < dof / 2; ++j) {
      term *= h / j;
      sum += term;
    }
    return std::exp(-h) * sum;
  }
  // Q(1/2, h) = erfc(sqrt h); then add h^(j+1/2) e^-h / Gamma(j+3/2).
  long double sum = std::erfc(std::sqrt(h));
  long double term = std::exp(-h) * std::sqrt(h) / std::tgamma(1.5L);
  for (int j = 0; j < (dof - 1) / 2; ++j) {
    sum += term;
    term *= h / (j + 1.5L);
  }
  return sum;
}

TEST(LnGamma, GoldenValues) {
  EXPECT_NEAR(ln_gamma(1.0), 0.0, 1e-12);
  EXPECT_NEAR(ln_gamma(0.5), static_cast<double>(0.5L * std::log(kPi)), 1e-12);
  EXPECT_NEAR(ln_gamma(0.5), 0.5723649429, 1e-10);
  EXPECT_NEAR(ln_gamma(10.0), static_cast<double>(log_factorial(9)), 1e-12);
  EXPECT_NEAR(ln_gamma(10.0), 12.8018274801, 1e-10);
}

TEST(LnGamma, FactorialsAcrossRange) {
  for (int m = 1; m <= 170; ++m) {
    const double expected = static_cast<double>(log_factorial(m - 1));
    const double tol = std::max(1e-12, 1e-14 * std::abs(expected));
    EXPECT_NEAR(ln_gamma(m), expected, tol) << "m=" << m;
  }
}

TEST(LnGamma, ExtremesOfDocumentedRange) {
  // Gamma(x) ~ 1/x - gamma_E near 0.
  const double x = 1e-3;
  // log Gamma(x) = -log x - gamma x + sum_{m>=2} (-1)^m zeta(m) x^m / m
  const long double small = -std::log(static_cast<long double>(x)) - kEulerGamma * x +
                            kPi * kPi / 12.0L * x * x - kZeta3 / 3.0L * x * x * x;
  EXPECT_NEAR(ln_gamma(x), static_cast<double>(small), 1e-12);
  // Stirling at 1e6 with three correction terms is exact to long double.
  const long double big = 1e6L;
  const long double stirling = (big - 0.5L) * std::log(big) - big + 0.5L * std::log(2.0L * kPi) +
                               1.0L / (12.0L * big) - 1.0L / (360.0L * big * big * big);
  EXPECT_NEAR(ln_gamma(1e6), static_cast<double>(stirling), 1e-14 * 1.3e7);
}

TEST(LnGamma, DomainErrors) {
  EXPECT_THROW(ln_gamma(0.0), DomainError);
  EXPECT_THROW(ln_gamma(-1.0), DomainError);
  EXPECT_THROW(ln_gamma(std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(ln_gamma(std::nan("")), DomainError);
}

TEST(Digamma, GoldenValues) {
  EXPECT_NEAR(digamma(1.0), static_cast<double>(-kEulerGamma), 1e-12);
  EXPECT_NEAR(digamma(0.5), static_cast<double>(-kEulerGamma - 2.0L * std::log(2.0L)), 1e-12);
  EXPECT_NEAR(digamma(10.0), static_cast<double>(-kEulerGamma + harmonic(9)), 1e-12);
  EXPECT_NEAR(digamma(1.0), -0.5772156649, 1e-10);
  EXPECT_NEAR(digamma(0.5), -1.9635100260, 1e-10);
  EXPECT_NEAR(digamma(10.0), 2.2517525891, 1e-10);
}

TEST(Digamma, IntegerAndHalfIntegerArguments) {
  for (int m = 1; m <= 300; ++m) {
    EXPECT_NEAR(digamma(m), static_cast<double>(-kEulerGamma + harmonic(m - 1)), 1e-12) << m;
    // psi(m + 1/2) = -gamma - 2 ln 2 + sum_{j=1}^m 2/(2j-1)
    long double half = -kEulerGamma - 2.0L * std::log(2.0L);
    for (int j = m; j >= 1; --j) half += 2.0L / (2 * j - 1);
    EXPECT_NEAR(digamma(m + 0.5), static_cast<double>(half), 1e-12) << m;
  }
}

TEST(Digamma, SmallArgumentAndDomain) {
  // psi(x) = -1/x - gamma + zeta(2) x - zeta(3) x^2 + zeta(4) x^3 - ...
  const long double x = 1e-3L;
  const long double expected = -1.0L / x - kEulerGamma + kPi * kPi / 6.0L * x - kZeta3 * x * x +
                               kPi * kPi * kPi * kPi / 90.0L * x * x * x;
  EXPECT_NEAR(digamma(static_cast<double>(x)), static_cast<double>(expected), 1e-11);
  EXPECT_THROW(digamma(0.0), DomainError);
  EXPECT_THROW(digamma(-2.5), DomainError);
}

TEST(Trigamma, GoldenValues) {
  EXPECT_NEAR(trigamma(1.0), static_cast<double>(kPi * kPi / 6.0L), 1e-10);
  EXPECT_NEAR(trigamma(0.5), static_cast<double>(kPi * kPi / 2.0L), 1e-10);
  long double partial = kPi * kPi / 6.0L;
  for (int m = 1; m <= 4; ++m) partial -= 1.0L / (static_cast<long double>(m) * m);
  EXPECT_NEAR(trigamma(5.0), static_cast<double>(partial), 1e-10);
  EXPECT_NEAR(trigamma(5.0), 0.22132295574, 1e-10);
  EXPECT_THROW(trigamma(0.0), DomainError);
}

TEST(Trigamma, IntegerArguments) {
  long double value = kPi * kPi / 6.0L;
  for (int m = 1; m <= 200; ++m) {
    EXPECT_NEAR(trigamma(m), static_cast<double>(value), 1e-12) << m;
    value -= 1.0L / (static_cast<long double>(m) * m);
  }
}

TEST(PsiProperties, RecurrenceOnRandomArguments) {
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double x = dist(gen);
    if (x == 0.0) x = 0.5;
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x), 1.0 / x, 1e-11) << x;
    EXPECT_NEAR(trigamma(x + 1.0) - trigamma(x), -1.0 / (x * x), 1e-10) << x;
  }
}

TEST(PsiProperties, DigammaIsDerivativeOfLnGamma) {
  for (double x = 0.5; x <= 100.0; x *= 1.13) {
    const double h = 1e-5 * x;
    const double numeric = (ln_gamma(x + h) - ln_gamma(x - h)) / (2.0 * h);
    EXPECT_NEAR(numeric, digamma(x), 1e-6 * std::max(1.0, std::abs(digamma(x)))) << x;
  }
}

TEST(Xi, GoldenValues) {
  EXPECT_EQ(xi(0.0), 0.0);
  EXPECT_NEAR(xi(0.5), static_cast<double>(2.0L * std::log(2.0L) - 1.0L), 1e-14);
  EXPECT_NEAR(xi(0.5), 0.3862943611, 1e-10);
  const long double third = -2.0L * (std::log(2.0L / 3.0L) + 1.0L / 3.0L);
  EXPECT_NEAR(xi(1.0 / 3.0), static_cast<double>(third), 1e-14);
  EXPECT_NEAR(xi(1.0 / 3.0), 0.14426354955, 1e-10);
}

TEST(Xi, AccurateNearZeroAndDomain) {
  // xi(x) = x^2 + 2x^3/3 + x^4/2 + ...
  for (double x : {1e-10, 1e-7, 1e-5}) {
    const long double lx = x;
    const long double series = lx * lx * (1.0L + 2.0L * lx / 3.0L + lx * lx / 2.0L);
    EXPECT_NEAR(xi(x) / static_cast<double>(series), 1.0, 1e-9) << x;
  }
  EXPECT_THROW(xi(-1e-12), DomainError);
  EXPECT_THROW(xi(1.0), DomainError);
  EXPECT_GE(xi(0.999999), 0.0);
}

TEST(Eta, GoldenValues) {
  EXPECT_EQ(eta(0.0), 1.0);
  EXPECT_NEAR(eta(0.5), static_cast<double>((2.0L * std::log(2.0L) - 1.0L) / 0.25L), 1e-13);
  EXPECT_NEAR(eta(0.5), 1.5451774445, 1e-10);
  const long double nine = -2.0L * (std::log(0.1L) + 0.9L) / 0.81L;
  EXPECT_NEAR(eta(0.9), static_cast<double>(nine), 1e-12);
  EXPECT_NEAR(eta(0.9), 3.46317306912, 1e-10);
  EXPECT_THROW(eta(1.0), DomainError);
  EXPECT_THROW(eta(-0.1), DomainError);
}

TEST(Eta, BranchesAgreeAtCrossover) {
  // Taylor branch just below the switch vs the closed form in long double.
  for (double x : {0.0099, 0.00999999, 0.01, 0.0100001}) {
    const long double lx = x;
    const long double direct = -2.0L * (std::log1p(-lx) + lx) / (lx * lx);
    EXPECT_NEAR(eta(x), static_cast<double>(direct), 1e-13) << x;
  }
}

TEST(Eta, MonotoneAndAtLeastOne) {
  double prev = eta(0.0);
  for (int i = 1; i < 1000; ++i) {
    const double cur = eta(i * 1e-3);
    EXPECT_GE(cur, 1.0);
    EXPECT_LE(prev, cur) << "x=" << i * 1e-3;
    prev = cur;
  }
}

TEST(Eta, XiIdentity) {
  for (double x = 1e-8; x < 0.999; x *= 1.05) {
    EXPECT_NEAR(xi(x), x * x * eta(x), 1e-13) << x;
  }
  EXPECT_NEAR(xi(0.999), 0.999 * 0.999 * eta(0.999), 1e-13);
}

TEST(MultiGamma, GoldenValues) {
  EXPECT_NEAR(ln_multigamma(1, 2.5), static_cast<double>(std::log(3.0L * std::sqrt(kPi) / 4.0L)),
              1e-12);
  EXPECT_NEAR(ln_multigamma(1, 2.5), 0.2846828705, 1e-10);
  EXPECT_NEAR(ln_multigamma(2, 1.5), static_cast<double>(std::log(kPi / 2.0L)), 1e-12);
  EXPECT_NEAR(ln_multigamma(2, 1.5), 0.4515827053, 1e-10);
  EXPECT_THROW(ln_multigamma(3, 1.0), DomainError);
  EXPECT_THROW(ln_multigamma(0, 1.0), DomainError);
}

TEST(MultiGamma, OneDimensionalIsLnGamma) {
  for (double z = 0.01; z < 500.0; z *= 1.7) EXPECT_EQ(ln_multigamma(1, z), ln_gamma(z));
}

TEST(ChisqCdf, GoldenValues) {
  EXPECT_NEAR(chisq_cdf(2, 1.3862943611), 0.5, 1e-10);
  EXPECT_NEAR(chisq_cdf(1, 3.8414588207), 0.95, 1e-10);
  EXPECT_EQ(chisq_cdf(45, 0.0), 0.0);
  EXPECT_EQ(chisq_cdf(45, -3.0), 0.0);
  EXPECT_THROW(chisq_cdf(0.0, 1.0), DomainError);
  EXPECT_THROW(chisq_cdf(-1.0, 1.0), DomainError);
}

TEST(ChisqCdf, MatchesFiniteSeriesOracle) {
  for (int dof : {1, 2, 3, 7, 30, 45, 101, 200}) {
    for (double q : {0.05, 0.3, 0.7, 1.0, 1.4, 2.0, 3.0}) {
      const double x = q * dof;
      const long double sf = chisq_sf_oracle(dof, x);
      EXPECT_NEAR(chisq_cdf(dof, x), static_cast<double>(1.0L - sf), 1e-10) << dof << " " << x;
      EXPECT_NEAR(chisq_sf(dof, x), static_cast<double>(sf),
                  std::max(1e-14, 1e-9 * static_cast<double>(sf)))
          << dof << " " << x;
    }
  }
}

TEST(ChisqQuantile, GoldenValues) {
  EXPECT_NEAR(chisq_quantile(2, 0.5), static_cast<double>(2.0L * std::log(2.0L)), 1e-9);
  EXPECT_NEAR(chisq_quantile(1, 0.05), 3.8414588207, 1e-9);
  EXPECT_NEAR(chisq_quantile(45, 0.05), 61.656233376279564, 1e-8);
  EXPECT_THROW(chisq_quantile(0, 0.05), DomainError);
  EXPECT_THROW(chisq_quantile(3, 0.0), DomainError);
  EXPECT_THROW(chisq_quantile(3, 1.0), DomainError);
}

TEST(ChisqQuantile, RoundTrip) {
  for (double dof : {1.0, 2.0, 30.0, 45.0, 630.0, 24255.0, 223440.0}) {
    for (double alpha : {0.01, 0.05, 0.5, 0.95}) {
      const double x = chisq_quantile(dof, alpha);
      EXPECT_NEAR(chisq_cdf(dof, x), 1.0 - alpha, 1e-8) << dof << " " << alpha;
    }
  }
}

TEST(ChisqQuantile, ExtremeTails) {
  const double x = chisq_quantile(3, 1e-12);
  EXPECT_NEAR(chisq_sf(3, x) / 1e-12, 1.0, 1e-6);
  const double y = chisq_quantile(1, 0.999);
  EXPECT_NEAR(chisq_cdf(1, y), 0.001, 1e-12);
}

TEST(Normal, GoldenValues) {
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_quantile(0.05), 1.6448536269514727, 1e-10);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
  EXPECT_NEAR(normal_quantile(0.025), 1.9599639845400540, 1e-10);
  EXPECT_THROW(normal_quantile(0.0), DomainError);
  EXPECT_THROW(normal_quantile(1.5), DomainError);
}

TEST(Normal, InverseRoundTripAcrossTails) {
  for (double lp = -300.0; lp < -0.31; lp += 0.37) {
    const double p = std::pow(10.0, lp);
    const double z = normal_inv_cdf(p);
    EXPECT_NEAR(normal_cdf(z) / p, 1.0, 1e-12) << p;
    if (p > 1e-15) EXPECT_NEAR(normal_inv_cdf(1.0 - p) + z, 0.0, 1e-15 / p) << p;
  }
  for (double p = 0.01; p < 1.0; p += 0.01) {
    EXPECT_NEAR(normal_cdf(normal_inv_cdf(p)), p, 1e-15) << p;
  }
}

}  // namespace
