#pragma once

#include <stdexcept>
#include <string>

namespace hexfourier {

// Thrown when an iterative or quadrature routine fails to reach its requested
// tolerance. The message carries the diagnostics.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for inputs that fall inside a boundary band where a piecewise formula
// is not defined (e.g. |t_i - t_j| == 1 for the spider function).
class BoundaryBandError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Coincident B-spline knots.
class DegenerateKnotsError : public std::invalid_argument {
 public:
  DegenerateKnotsError(const std::string& what, int pair)
      : std::invalid_argument(what), pair_(pair) {}

  // Index (0, 1, 2) of the collapsed knot pair.
  int pair() const noexcept { return pair_; }

 private:
  int pair_;
};

}  // namespace hexfourier
