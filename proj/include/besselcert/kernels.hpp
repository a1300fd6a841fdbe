#pragma once

// Raw Bessel functions I_nu, J_nu, K_nu and the normalized kernels
//
//   I-kernel(x) = 2^nu Gamma(nu+1) x^-nu I_nu(x) = sum_n (x^2/4)^n / ((nu+1)_n n!)
//   J-kernel(x) = 2^nu Gamma(nu+1) x^-nu J_nu(x) = sum_n (-x^2/4)^n / ((nu+1)_n n!)
//   K-kernel(x) = 2^(nu-1) Gamma(nu) x^nu K_nu(x)
//
// evaluated from their power series on the window |x| <= kMaxArgument.

#include <string_view>

namespace besselcert {

/// Upper end of the supported argument window.
inline constexpr double kMaxArgument = 40.0;

enum class Family { I, J, K };

std::string_view to_string(Family family);
/// Accepts "I", "J", "K" (case-insensitive), optionally suffixed "-kernel".
Family parse_family(std::string_view text);

struct EvalResult {
  double value = 0.0;
  /// Bound on truncation plus rounding error of the path actually used.
  double abs_error_bound = 0.0;
  /// Series terms summed; 0 only for closed-form paths.
  int terms_used = 0;
};

/// Euler gamma function on (0, 171].
double gamma_fn(double z);

/// Rising factorial a(a+1)...(a+n-1); (a)_0 = 1.
double pochhammer(double a, int n);

/// Derivative of order 0, 1 or 2 of a normalized kernel.
///
/// I and J accept x in [0, 40] (the I-kernel also accepts negative x at order 0,
/// by evenness); K requires x in (0, 40]. Orders: nu > -1 for I and J, nu > 0 for K.
EvalResult eval_normalized(Family family, double nu, double x, int order);

/// I_nu(x), J_nu(x) or K_nu(x) for x in (0, 40].
EvalResult eval_raw(Family family, double nu, double x);

/// K_mu(x) for any real order mu, using K_{-mu} = K_mu. Needed by the
/// derivative formulas, which step the order down by one or two.
EvalResult bessel_k(double mu, double x);

/// Closed forms at half-integer orders, differentiated symbolically:
///   I: nu in {-1/2, 1/2, 3/2};  J: nu in {-1/2, 1/2, 3/2};  K: nu = 3/2.
/// Intended as a test oracle; computed in extended precision.
double half_integer_oracle(Family family, double nu, double x, int order);

}  // namespace besselcert
