#ifndef POLYRIESZ_ERRORS_HPP
#define POLYRIESZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyriesz {

// Input is well-formed but outside what the operation supports
// (nonconvex polygon where convexity is required, concave vertex for a
// diagonal shift, and so on).
class UnsupportedInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A quadrature failed to reach its tolerance before exhausting the
// subdivision budget.  Carries the best available estimate so callers can
// decide whether to keep it.
class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

private:
  double estimate_;
  double error_bound_;
};

// The energy maximizer could not produce any valid ascent step.
class OptimizationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyriesz

#endif
