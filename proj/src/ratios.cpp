#include "besselcert/ratios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "besselcert/errors.hpp"
#include "besselcert/kernels.hpp"
#include "besselcert/zeros.hpp"
#include "series.hpp"

namespace besselcert {

namespace {

void require_order(double nu, double lower, bool inclusive, const char* what) {
  if (!std::isfinite(nu) || nu < lower || (!inclusive && nu == lower)) {
    throw DomainError(std::string(what) + ": order " + std::to_string(nu) + " outside its domain");
  }
}

void require_argument(double x, double upper, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0) || x > upper) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside (0, " +
                      std::to_string(upper) + "]");
  }
}

double kernel_i(double nu, double x) { return eval_normalized(Family::I, nu, x, 0).value; }

// t = x R(x) = x^2 I-kernel_{nu+1} / (2(nu+1) I-kernel_nu); y = nu + t.
double x_times_r(double nu, double x) { return x * x * kernel_i(nu + 1.0, x) / (2.0 * (nu + 1.0) * kernel_i(nu, x)); }

// Same quantity past the kernel window; the I series has positive terms and
// converges without cancellation for any x.
double x_times_r_extended(double nu, double x) {
  const double z = x * x / 4.0;
  const auto s0 = detail::hypergeometric_0f1(nu + 1.0, z);
  const auto s1 = detail::hypergeometric_0f1(nu + 2.0, z);
  if (!std::isfinite(s0.tail_bound) || !std::isfinite(s1.tail_bound)) {
    throw ConvergenceError("I series did not converge at x = " + std::to_string(x));
  }
  return x * x * s1.sum / (2.0 * (nu + 1.0) * s0.sum);
}

double segura_denominator(double nu, double x) { return nu + 0.5 + std::hypot(x, nu + 1.5); }

}  // namespace

RatioState ratio_state(double nu, double x) {
  require_order(nu, -1.0, false, "ratio_state");
  require_argument(x, kMaxArgument, "ratio_state");
  const double t = x_times_r(nu, x);
  RatioState s;
  s.nu = nu;
  s.x = x;
  s.R = t / x;
  s.y = nu + t;
  s.Q = 1.0 / x + s.R;
  return s;
}

double q_prime(double nu, double x) {
  require_order(nu, -1.0, false, "q_prime");
  require_argument(x, kMaxArgument, "q_prime");
  const double t = x_times_r(nu, x);
  // x^2 + nu^2 - y^2 - y + nu - 1 with y = nu + t, the nu terms cancelled symbolically
  return (x * x - t * (2.0 * nu + 1.0 + t) - 1.0) / (x * x);
}

double r_prime(double nu, double x) {
  require_order(nu, -1.0, false, "r_prime");
  require_argument(x, kMaxArgument, "r_prime");
  const double r = x_times_r(nu, x) / x;
  return 1.0 - r * r - (2.0 * nu + 1.0) * r / x;
}

BoundPair bound_segura(double nu, double x) {
  require_order(nu, 0.0, false, "bound_segura");
  require_argument(x, kMaxArgument, "bound_segura");
  const double excess = x * x / segura_denominator(nu, x);
  BoundPair b;
  b.bound_value = nu + excess;
  // y - bound = t - excess, formed without subtracting nu
  b.slack = x_times_r(nu, x) - excess;
  b.holds = b.slack > 0.0;
  return b;
}

BoundPair bound_amos(double nu, double x) {
  require_order(nu, 0.0, true, "bound_amos");
  require_argument(x, kMaxArgument, "bound_amos");
  BoundPair b;
  b.bound_value = x / (std::hypot(x, nu + 1.0) + nu + 1.0);
  b.slack = x_times_r(nu, x) / x - b.bound_value;
  b.holds = b.slack > 0.0;
  return b;
}

WPhiCertificate w_phi_certificate(double nu, double x) {
  require_order(nu, 0.0, false, "w_phi_certificate");
  const double x_max = std::sqrt(2.0 * nu + 4.0);
  if (!std::isfinite(x) || !(x > 0.0) || !(x < x_max)) {
    throw DomainError("w_phi_certificate: argument " + std::to_string(x) + " outside (0, " + std::to_string(x_max) +
                      ")");
  }
  auto w_of_square = [nu](double s) {
    const double root = std::sqrt(s + (nu + 1.5) * (nu + 1.5));
    const double a = nu + 0.5;
    const double n1 = 2.0 * (nu + 1.0);
    return (root - a) / (root + a) * (n1 * s / (n1 + s)) - 1.0;
  };
  return {w_of_square(x * x), w_of_square(2.0 * nu + 4.0)};
}

double gronwall_tail(double nu, double x) {
  require_order(nu, -1.0, false, "gronwall_tail");
  if (!std::isfinite(x) || x < 10.0 || x > kMaxTailArgument) {
    throw DomainError("gronwall_tail: argument " + std::to_string(x) + " outside [10, " +
                      std::to_string(kMaxTailArgument) + "]");
  }
  const double t = x <= kMaxArgument ? x_times_r(nu, x) : x_times_r_extended(nu, x);
  return nu + t - x + 0.5 - (4.0 * nu * nu - 1.0) / (8.0 * x);
}

MittagLefflerRatio ratio_J(double nu, double x, int n_terms) {
  require_order(nu, -1.0, false, "ratio_J");
  require_argument(x, kMaxArgument, "ratio_J");
  if (n_terms < 1) throw DomainError("ratio_J: n_terms must be >= 1");
  const auto zeros = bessel_zeros_in_window(nu);
  if (!zeros.empty() && !(x < zeros.front().value)) {
    throw DomainError("ratio_J: x = " + std::to_string(x) + " is not below the first zero " +
                      std::to_string(zeros.front().value));
  }

  MittagLefflerRatio out;
  out.direct = eval_raw(Family::J, nu + 1.0, x).value / eval_raw(Family::J, nu, x).value;
  double partial = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    const bool exact = n <= static_cast<int>(zeros.size());
    const double j = exact ? zeros[n - 1].value : mcmahon_zero(nu, n);
    if (exact) ++out.exact_zeros;
    partial += 2.0 * x / ((j - x) * (j + x));
  }
  // Zeros beyond n_terms follow u = (n + nu/2 - 1/4) pi; the sum is bounded by its integral.
  const double u0 = (n_terms + nu / 2.0 - 0.25) * std::numbers::pi;
  out.tail_estimate = u0 > x ? std::log((u0 + x) / (u0 - x)) / std::numbers::pi
                             : std::numeric_limits<double>::infinity();
  out.partial_sum = partial;
  out.mittag_leffler = partial + out.tail_estimate;
  return out;
}

double ratio_K(double nu, double x) {
  if (!std::isfinite(nu)) throw DomainError("ratio_K: order must be finite");
  require_argument(x, kMaxArgument, "ratio_K");
  return bessel_k(nu + 1.0, x).value / bessel_k(nu, x).value;
}

}  // namespace besselcert
