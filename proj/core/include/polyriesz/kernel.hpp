#ifndef POLYRIESZ_KERNEL_HPP
#define POLYRIESZ_KERNEL_HPP

#include <functional>
#include <optional>

namespace polyriesz {

// Radially decreasing interaction kernel K(r).  Requirements: K >= 0,
// K strictly decreasing, and int_0^1 K(r) r dr finite.  The radial
// primitive M(R) = int_0^R K(r) r dr is what the fan quadrature consumes;
// it absorbs the singularity at r = 0 exactly.
class Kernel {
public:
  enum class Kind { Riesz, RegularizedRiesz, Custom };

  // K(r) = r^-alpha, alpha in (0,2).
  static Kernel riesz(double alpha);
  // K(r) = (r + delta)^-alpha, alpha in (0,2), delta > 0.  Bounded at 0.
  static Kernel regularized_riesz(double alpha, double delta);
  // User-supplied K and K'; M is integrated numerically unless provided.
  // K >= 0 and K' < 0 are spot-checked on a log-spaced grid.
  static Kernel custom(std::function<double(double)> k,
                       std::function<double(double)> dk,
                       std::optional<std::function<double(double)>> m = std::nullopt);

  // K(r).  Requires r > 0, except the regularized kind which extends
  // continuously to r = 0.
  double eval(double r) const;
  double operator()(double r) const { return eval(r); }
  // K'(r), r > 0.
  double deriv(double r) const;
  // M(R) = int_0^R K(r) r dr, R >= 0.
  double radial_primitive(double R) const;

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double delta() const { return delta_; }

private:
  Kernel() = default;

  Kind kind_ = Kind::Riesz;
  double alpha_ = 1.0;
  double delta_ = 0.0;
  std::function<double(double)> k_, dk_, m_;
};

}  // namespace polyriesz

#endif
