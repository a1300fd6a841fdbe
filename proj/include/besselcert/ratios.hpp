#pragma once

// Ratio functions of modified Bessel functions of the first kind
//
//   R(x) = I_{nu+1}(x) / I_nu(x),   y(x) = x I_nu'(x) / I_nu(x) = nu + x R(x),   Q(x) = 1/x + R(x)
//
// together with classical lower bounds on them, and the ratios J_{nu+1}/J_nu
// and K_{nu+1}/K_nu.

namespace besselcert {

struct RatioState {
  double nu = 0.0;
  double x = 0.0;
  double R = 0.0;
  double y = 0.0;
  double Q = 0.0;
};

/// R, y and Q for nu > -1, x in (0, 40].
RatioState ratio_state(double nu, double x);

/// Q'(x) from the closed form x^2 Q' = x^2 + nu^2 - y^2 - y + nu - 1.
double q_prime(double nu, double x);

/// R'(x) from the Riccati equation R' = 1 - R^2 - (2 nu + 1) R / x.
double r_prime(double nu, double x);

struct BoundPair {
  double bound_value = 0.0;
  bool holds = false;
  /// actual - bound_value
  double slack = 0.0;
};

/// y(x) > nu + x^2 / (nu + 1/2 + sqrt(x^2 + (nu + 3/2)^2)) for nu > 0.
BoundPair bound_segura(double nu, double x);

/// R(x) > x / (sqrt(x^2 + (nu + 1)^2) + nu + 1) for nu >= 0.
BoundPair bound_amos(double nu, double x);

struct WPhiCertificate {
  /// Upper bound for x^2 Q'(x) obtained from the Segura bound.
  double w = 0.0;
  /// w evaluated at x^2 = 2 nu + 4.
  double phi = 0.0;
};

/// Requires nu > 0 and 0 < x < sqrt(2 nu + 4).
WPhiCertificate w_phi_certificate(double nu, double x);

/// y(x) - x + 1/2 - (4 nu^2 - 1) / (8 x), the remainder after two terms of the
/// large-x expansion. Requires nu > -1 and 10 <= x <= kMaxTailArgument.
double gronwall_tail(double nu, double x);

/// Upper end accepted by gronwall_tail, which sums the I series past the kernel window.
inline constexpr double kMaxTailArgument = 150.0;

struct MittagLefflerRatio {
  /// J_{nu+1}(x) / J_nu(x) from the series.
  double direct = 0.0;
  /// Partial fraction sum over n_terms zeros plus the tail estimate.
  double mittag_leffler = 0.0;
  /// Partial fraction sum over the first n_terms zeros.
  double partial_sum = 0.0;
  /// Estimate of the omitted terms n > n_terms.
  double tail_estimate = 0.0;
  /// Zeros located numerically; the rest come from McMahon's expansion.
  int exact_zeros = 0;
};

/// J_{nu+1}(x) / J_nu(x) = sum_n 2x / (j_{nu,n}^2 - x^2), for 0 < x < j_{nu,1}.
MittagLefflerRatio ratio_J(double nu, double x, int n_terms);

/// K_{nu+1}(x) / K_nu(x) for real nu, x in (0, 40].
double ratio_K(double nu, double x);

}  // namespace besselcert
