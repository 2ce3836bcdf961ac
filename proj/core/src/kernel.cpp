#include "polyriesz/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polyriesz/quadrature.hpp"

namespace polyriesz {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("kernel exponent must lie in (0,2)");
}

// int_0^R r (r+delta)^-alpha dr in closed form.
double regularized_primitive(double R, double alpha, double delta) {
  if (R <= 0.0) return 0.0;
  double s1 = delta + R;
  if (alpha == 1.0) return R - delta * std::log1p(R / delta);
  double p2 = 2.0 - alpha, p1 = 1.0 - alpha;
  double term2 = (std::pow(s1, p2) - std::pow(delta, p2)) / p2;
  double term1 = (std::pow(s1, p1) - std::pow(delta, p1)) / p1;
  return term2 - delta * term1;
}

}  // namespace

Kernel Kernel::riesz(double alpha) {
  check_alpha(alpha);
  Kernel k;
  k.kind_ = Kind::Riesz;
  k.alpha_ = alpha;
  return k;
}

Kernel Kernel::regularized_riesz(double alpha, double delta) {
  check_alpha(alpha);
  if (!(delta > 0.0)) throw std::invalid_argument("regularization offset must be positive");
  Kernel k;
  k.kind_ = Kind::RegularizedRiesz;
  k.alpha_ = alpha;
  k.delta_ = delta;
  return k;
}

Kernel Kernel::custom(std::function<double(double)> k, std::function<double(double)> dk,
                      std::optional<std::function<double(double)>> m) {
  if (!k || !dk) throw std::invalid_argument("custom kernel needs K and K'");
  // Spot-check positivity and strict decrease on a log grid.
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 64; ++i) {
    double r = std::pow(10.0, -8.0 + 11.0 * i / 63.0);
    double v = k(r);
    if (!(v >= 0.0)) throw std::invalid_argument("custom kernel is negative at sampled radius");
    if (!(v < prev)) throw std::invalid_argument("custom kernel is not strictly decreasing");
    if (!(dk(r) < 0.0)) throw std::invalid_argument("custom kernel derivative is not negative");
    prev = v;
  }
  Kernel out;
  out.kind_ = Kind::Custom;
  out.k_ = std::move(k);
  out.dk_ = std::move(dk);
  if (m) out.m_ = std::move(*m);
  return out;
}

double Kernel::eval(double r) const {
  if (kind_ == Kind::RegularizedRiesz) {
    if (r < 0.0) throw std::domain_error("kernel radius must be nonnegative");
    return std::pow(r + delta_, -alpha_);
  }
  if (!(r > 0.0)) throw std::domain_error("kernel radius must be positive");
  if (kind_ == Kind::Riesz) return std::pow(r, -alpha_);
  return k_(r);
}

double Kernel::deriv(double r) const {
  if (!(r > 0.0) && kind_ != Kind::RegularizedRiesz)
    throw std::domain_error("kernel radius must be positive");
  switch (kind_) {
    case Kind::Riesz:
      return -alpha_ * std::pow(r, -alpha_ - 1.0);
    case Kind::RegularizedRiesz:
      if (r < 0.0) throw std::domain_error("kernel radius must be nonnegative");
      return -alpha_ * std::pow(r + delta_, -alpha_ - 1.0);
    case Kind::Custom:
      return dk_(r);
  }
  return 0.0;
}

double Kernel::radial_primitive(double R) const {
  if (!(R >= 0.0)) throw std::domain_error("radial primitive needs R >= 0");
  if (R == 0.0) return 0.0;
  switch (kind_) {
    case Kind::Riesz: {
      double p = 2.0 - alpha_;
      if (alpha_ == 1.0) return R;
      if (alpha_ == 0.5) return R * std::sqrt(R) / 1.5;
      if (alpha_ == 1.5) return 2.0 * std::sqrt(R);
      return std::pow(R, p) / p;
    }
    case Kind::RegularizedRiesz:
      return regularized_primitive(R, alpha_, delta_);
    case Kind::Custom:
      break;
  }
  if (m_) return m_(R);
  // Dyadic panels toward 0 keep the integrand smooth on each panel even
  // when K blows up at the origin.  Panel contributions decay geometrically
  // for any admissible kernel; stop once the remaining tail is negligible
  // and close it with a geometric estimate.
  auto f = [this](double r) { return k_(r) * r; };
  double total = 0.0;
  double hi = R;
  double prev_panel = 0.0;
  for (int level = 0; level < 5000; ++level) {
    double lo = hi * 0.5;
    double panel = gauss_panel(f, lo, hi, 32);
    total += panel;
    if (level > 4 && std::abs(panel) <= 1e-16 * std::abs(total)) {
      double ratio = prev_panel != 0.0 ? panel / prev_panel : 0.0;
      if (ratio > 0.0 && ratio < 1.0) total += panel * ratio / (1.0 - ratio);
      break;
    }
    prev_panel = panel;
    hi = lo;
  }
  return total;
}

}  // namespace polyriesz
