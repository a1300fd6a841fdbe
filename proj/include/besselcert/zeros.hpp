#pragma once

#include <vector>

namespace besselcert {

/// n-th positive zero j_{nu,n} of J_nu.
struct BesselZero {
  double nu = 0.0;
  int n = 0;
  double value = 0.0;
  /// |J_nu(value)|
  double residual = 0.0;
  /// J_nu changes sign across [value - bracket_width, value + bracket_width].
  double bracket_width = 0.0;
};

/// Locates j_{nu,n} for nu > -1 by a sign-change scan (step 0.5) refined by
/// bisection to width 1e-12 and one safeguarded Newton step.
/// Throws WindowError if the zero lies beyond x = 40, ConvergenceError if
/// bisection exceeds its iteration cap.
BesselZero bessel_zero(double nu, int n);

/// The first `count` zeros from a single scan.
std::vector<BesselZero> bessel_zeros(double nu, int count);

/// All zeros of J_nu inside (0, 40].
std::vector<BesselZero> bessel_zeros_in_window(double nu);

/// McMahon's large-n expansion (four terms) for j_{nu,n}.
double mcmahon_zero(double nu, int n);

}  // namespace besselcert
