#pragma once

// Shared design grid and extended-precision reference formulas for the tests.
// The references evaluate digamma and trigamma at integer and half-integer
// arguments through their finite closed forms, independent of specfun.

#include <cmath>
#include <vector>

#include "covlrt/lrt.hpp"

namespace covlrt::testing {

struct GridPoint {
  int k;
  int p;
};

// k in {3, 20, 50}, p in {5, 20, 50, 95}, n_i = 100.
inline const std::vector<GridPoint>& size_grid() {
  static const std::vector<GridPoint> grid = [] {
    std::vector<GridPoint> g;
    for (int k : {3, 20, 50})
      for (int p : {5, 20, 50, 95}) g.push_back({k, p});
    return g;
  }();
  return grid;
}

inline DesignSpec grid_design(const GridPoint& g) { return DesignSpec::balanced(g.p, g.k, 100); }

using Real = long double;

inline constexpr Real kEulerGammaL = 0.577215664901532860606512090082402431L;
inline constexpr Real kPiL = 3.141592653589793238462643383279502884L;

// psi(m / 2) for integer m >= 1.
inline Real digamma_half(long m) {
  Real s = 0.0L;
  if (m % 2 == 0) {
    for (long j = m / 2 - 1; j >= 1; --j) s += 1.0L / j;
    return -kEulerGammaL + s;
  }
  for (long j = (m - 1) / 2; j >= 1; --j) s += 2.0L / (2 * j - 1);
  return -kEulerGammaL - 2.0L * std::log(2.0L) + s;
}

// psi'(m / 2) for integer m >= 1.
inline Real trigamma_half(long m) {
  Real s = 0.0L;
  if (m % 2 == 0) {
    for (long j = m / 2 - 1; j >= 1; --j) s += 1.0L / (static_cast<Real>(j) * j);
    return kPiL * kPiL / 6.0L - s;
  }
  for (long j = (m - 1) / 2; j >= 1; --j) s += 4.0L / (static_cast<Real>(2 * j - 1) * (2 * j - 1));
  return kPiL * kPiL / 2.0L - s;
}

inline Real ref_mu_n(const DesignSpec& d) {
  const long nk = d.total() - d.k();
  const int p = d.p();
  Real s = 0.0L;
  for (int j = 1; j <= p; ++j) s += nk * digamma_half(nk + 1 - j);
  for (int ni : d.group_sizes()) {
    for (int j = 1; j <= p; ++j) s -= (ni - 1) * digamma_half(ni - j);
    s += p * (ni - 1) * std::log(static_cast<Real>(ni - 1));
  }
  s -= p * nk * std::log(static_cast<Real>(nk));
  return s;
}

inline Real ref_exact_variance(const DesignSpec& d) {
  const long nk = d.total() - d.k();
  Real s = 0.0L;
  for (int ni : d.group_sizes())
    for (int j = 1; j <= d.p(); ++j) s += static_cast<Real>(ni - 1) * (ni - 1) * trigamma_half(ni - j);
  for (int j = 1; j <= d.p(); ++j) s -= static_cast<Real>(nk) * nk * trigamma_half(nk + 1 - j);
  return s;
}

inline Real ref_xi(Real x) { return -2.0L * (std::log1p(-x) + x); }

inline Real ref_sigma2_n(const DesignSpec& d) {
  const long nk = d.total() - d.k();
  const Real p = d.p();
  Real s = p * (d.k() - 1);
  for (int ni : d.group_sizes()) s += static_cast<Real>(ni - 1) * (ni - 1) * ref_xi(p / ni);
  s -= static_cast<Real>(nk) * nk * ref_xi(p / (nk + 1));
  return s;
}

inline Real ref_mu_bar_n(const DesignSpec& d) {
  const long nk = d.total() - d.k();
  const Real p = d.p();
  Real s = nk * (p - nk + 0.5L) * std::log1p(-p / (nk + 1));
  for (int ni : d.group_sizes()) s -= (ni - 1) * (p - ni + 1.5L) * std::log1p(-p / ni);
  return s - p * (d.k() - 1);
}

// Lower bound sigma2_n >= p (p + 1) (k - 1) (1 - delta_n).
inline double lemma7_bound(const DesignSpec& d) {
  const double m = d.min_group_size();
  const double delta = 2.0 * (1.0 - (1.0 - 1.0 / m) * (1.0 - 1.0 / m));
  return static_cast<double>(d.p()) * (d.p() + 1) * (d.k() - 1) * (1.0 - delta);
}

}  // namespace covlrt::testing
