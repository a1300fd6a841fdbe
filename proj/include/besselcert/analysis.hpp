#pragma once

// Sign scans of (log g)'' for the kernels and their derivatives, and the
// switch points where log-concavity turns into log-convexity or back.

#include <string_view>
#include <vector>

namespace besselcert {

/// Functions whose logarithmic second derivative is analysed.
enum class Target {
  I,            ///< I-kernel
  IPrime,       ///< I-kernel'
  J,            ///< J-kernel, on (0, j_{nu,1})
  MinusJPrime,  ///< -J-kernel', on (0, j_{nu+1,1})
  MinusKPrime,  ///< -K-kernel', nu > 0
};

std::string_view to_string(Target target);
/// Accepts I, I-prime, J, minus-J-prime, minus-K-prime (case-insensitive).
Target parse_target(std::string_view text);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = false;
};

/// Open lower ends at 0 are replaced by this standoff.
inline constexpr double kOriginStandoff = 0.01;
/// Other open ends move inward by this standoff.
inline constexpr double kEndpointStandoff = 1e-3;

struct GridPoint {
  double x = 0.0;
  double d2 = 0.0;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScanReport {
  Target target = Target::I;
  double nu = 0.0;
  std::vector<GridPoint> grid;
  std::vector<Bracket> sign_changes;
};

/// Upper end of the target's domain in x (40, j_{nu,1} or j_{nu+1,1}).
/// Throws DomainError for orders outside the target's range.
double target_domain_end(Target target, double nu);

/// (log g)''(x) from analytic formulas. I, I-prime, J and minus-J-prime need
/// nu > -1; minus-K-prime needs nu > 0. x must lie in (0, target_domain_end).
double log_deriv2(Target target, double nu, double x);

/// Geometric grid of `points` >= 16 values of log_deriv2 on the interval,
/// with open ends pulled in by the standoffs.
ScanReport scan_concavity(Target target, double nu, const Interval& interval, int points);

/// Geometric grid used by scan_concavity.
std::vector<double> geometric_grid(const Interval& interval, int points);

enum class Sign { Negative, Positive };

/// Strict sign with margin: d2 < -1e-14 (1 + |d2|) for Negative, mirrored for Positive.
bool certified(double d2, Sign expected);

/// Grid points of the report that fail the margin rule.
std::vector<GridPoint> violations(const ScanReport& report, Sign expected);

enum class CriticalKind { XNu, ZNu };

std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
  CriticalKind kind = CriticalKind::XNu;
  double nu = 0.0;
  double value = 0.0;
  Interval bracket;
  /// Lower bound the point must exceed: sqrt(2(nu+3)) for x_nu, j_{nu,1} for z_nu.
  double lower_witness = 0.0;
};

/// Sign change of q_prime(nu+1, .) from negative to positive, for nu > -1/2.
/// Throws WindowError if it lies past 40, FalsificationError if the sign
/// pattern contradicts a single change above sqrt(2(nu+3)).
CriticalPoint find_x_nu(double nu);

/// Maximum of R_nu, the sign change of the Riccati right-hand side from
/// positive to negative, for nu in (-1, -1/2). Throws WindowError if it lies
/// past 40, FalsificationError if there is no single maximum at or above j_{nu,1}.
CriticalPoint find_z_nu(double nu);

}  // namespace besselcert
