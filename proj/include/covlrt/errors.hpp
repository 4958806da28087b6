#pragma once

#include <stdexcept>
#include <string>

namespace covlrt {

/// Argument outside the mathematical domain of a scalar function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix or sample has the wrong shape for the requested operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cholesky pivot fell below tolerance. A scatter matrix hitting this is
/// rank deficient, which for sample data means p >= n_i or degenerate rows.
class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Design (p, group sizes) violates k >= 2, p >= 1 or n_i > p.
class DesignError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace covlrt
