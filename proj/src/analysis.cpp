#include "besselcert/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "besselcert/errors.hpp"
#include "besselcert/kernels.hpp"
#include "besselcert/ratios.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

constexpr double kMarginScale = 1e-14;
constexpr double kCriticalStep = 0.05;
constexpr double kCriticalWidth = 1e-10;

std::string lower(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double first_zero_or_window(double nu) {
  try {
    return bessel_zero(nu, 1).value;
  } catch (const WindowError&) {
    return kMaxArgument;
  }
}

// (log g)'' = g''/g - (g'/g)^2 for a kernel g.
double log_deriv2_kernel(Family family, double nu, double x) {
  const double g = eval_normalized(family, nu, x, 0).value;
  const double g1 = eval_normalized(family, nu, x, 1).value / g;
  const double g2 = eval_normalized(family, nu, x, 2).value / g;
  return g2 - g1 * g1;
}

// Formulas without the domain check; x is assumed inside the target's domain.
double log_deriv2_unchecked(Target target, double nu, double x) {
  switch (target) {
    case Target::I:
      return log_deriv2_kernel(Family::I, nu, x);
    case Target::IPrime:
      // (log I-kernel')' = Q_{nu+1}
      return q_prime(nu + 1.0, x);
    case Target::J:
      return log_deriv2_kernel(Family::J, nu, x);
    case Target::MinusJPrime: {
      // (log(-J-kernel'))' = 1/x - rho with rho = J_{nu+2}/J_{nu+1}
      const double rho = x * eval_normalized(Family::J, nu + 2.0, x, 0).value /
                         (2.0 * (nu + 2.0) * eval_normalized(Family::J, nu + 1.0, x, 0).value);
      return -1.0 / (x * x) - 1.0 - rho * rho + (2.0 * nu + 3.0) * rho / x;
    }
    case Target::MinusKPrime: {
      // (log(-K-kernel'))' = 1/x - sigma with sigma = K_{nu-2}/K_{nu-1}
      const double sigma = bessel_k(nu - 2.0, x).value / bessel_k(nu - 1.0, x).value;
      return -1.0 / (x * x) + 1.0 - sigma * sigma - (2.0 * nu - 3.0) * sigma / x;
    }
  }
  throw DomainError("unknown target");
}

bool open_end(Target target) { return target == Target::J || target == Target::MinusJPrime; }

void require_inside(Target target, double x, double end) {
  const bool inside = std::isfinite(x) && x > 0.0 && (open_end(target) ? x < end : x <= end);
  if (!inside) {
    throw DomainError("log_deriv2(" + std::string(to_string(target)) + "): x = " + std::to_string(x) +
                      " outside (0, " + std::to_string(end) + (open_end(target) ? ")" : "]"));
  }
}

bool negative(double v) { return v < 0.0; }

}  // namespace

std::string_view to_string(Target target) {
  switch (target) {
    case Target::I:
      return "I";
    case Target::IPrime:
      return "I-prime";
    case Target::J:
      return "J";
    case Target::MinusJPrime:
      return "minus-J-prime";
    case Target::MinusKPrime:
      return "minus-K-prime";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  const std::string s = lower(text);
  for (Target t : {Target::I, Target::IPrime, Target::J, Target::MinusJPrime, Target::MinusKPrime}) {
    if (s == lower(to_string(t))) return t;
  }
  throw DomainError("unknown target '" + std::string(text) +
                    "' (expected I, I-prime, J, minus-J-prime or minus-K-prime)");
}

std::string_view to_string(CriticalKind kind) { return kind == CriticalKind::XNu ? "x_nu" : "z_nu"; }

double target_domain_end(Target target, double nu) {
  if (!std::isfinite(nu)) throw DomainError("order must be finite");
  if (target == Target::MinusKPrime) {
    if (!(nu > 0.0)) throw PoleError("minus-K-prime requires nu > 0");
    return kMaxArgument;
  }
  if (!(nu > -1.0)) throw PoleError(std::string(to_string(target)) + " requires nu > -1");
  switch (target) {
    case Target::J:
      return first_zero_or_window(nu);
    case Target::MinusJPrime:
      return first_zero_or_window(nu + 1.0);
    default:
      return kMaxArgument;
  }
}

double log_deriv2(Target target, double nu, double x) {
  const double end = target_domain_end(target, nu);
  require_inside(target, x, end);
  return log_deriv2_unchecked(target, nu, x);
}

std::vector<double> geometric_grid(const Interval& interval, int points) {
  if (points < 16) throw DomainError("grid needs at least 16 points");
  if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi) || interval.lo < 0.0 ||
      !(interval.hi > interval.lo) || interval.hi > kMaxArgument) {
    throw DomainError("interval [" + std::to_string(interval.lo) + ", " + std::to_string(interval.hi) +
                      "] must satisfy 0 <= lo < hi <= 40");
  }
  double lo = interval.lo;
  if (lo == 0.0) {
    lo = kOriginStandoff;
  } else if (interval.lo_open) {
    lo += kEndpointStandoff;
  }
  const double hi = interval.hi_open ? interval.hi - kEndpointStandoff : interval.hi;
  if (!(hi > lo)) throw DomainError("interval is empty after endpoint standoffs");

  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(ratio * i / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

ScanReport scan_concavity(Target target, double nu, const Interval& interval, int points) {
  const double end = target_domain_end(target, nu);
  const auto xs = geometric_grid(interval, points);
  ScanReport report;
  report.target = target;
  report.nu = nu;
  report.grid.reserve(xs.size());
  for (double x : xs) {
    require_inside(target, x, end);
    report.grid.push_back({x, log_deriv2_unchecked(target, nu, x)});
  }
  for (std::size_t i = 0; i + 1 < report.grid.size(); ++i) {
    const auto& a = report.grid[i];
    const auto& b = report.grid[i + 1];
    if ((a.d2 > 0.0 && b.d2 <= 0.0) || (a.d2 < 0.0 && b.d2 >= 0.0) || (a.d2 == 0.0 && b.d2 != 0.0)) {
      report.sign_changes.push_back({a.x, b.x});
    }
  }
  return report;
}

bool certified(double d2, Sign expected) {
  const double margin = kMarginScale * (1.0 + std::abs(d2));
  return expected == Sign::Negative ? d2 < -margin : d2 > margin;
}

std::vector<GridPoint> violations(const ScanReport& report, Sign expected) {
  std::vector<GridPoint> out;
  std::copy_if(report.grid.begin(), report.grid.end(), std::back_inserter(out),
               [expected](const GridPoint& p) { return !certified(p.d2, expected); });
  return out;
}

namespace {

// Scans f on a uniform grid from `start` to 40 and returns the unique bracket
// where sign(f) leaves `before`. Throws WindowError if the sign never changes.
template <class F>
Bracket unique_change(F&& f, double start, bool before_negative, const char* what) {
  double prev_x = start;
  bool in_first = true;
  Bracket found{};
  for (int i = 1;; ++i) {
    const double x = std::min(start + i * kCriticalStep, kMaxArgument);
    const bool is_negative = negative(f(x));
    if (in_first && is_negative != before_negative) {
      found = {prev_x, x};
      in_first = false;
    } else if (!in_first && is_negative == before_negative) {
      throw FalsificationError(std::string(what) + ": sign changes more than once on (" + std::to_string(start) +
                               ", 40]");
    }
    prev_x = x;
    if (x >= kMaxArgument) break;
  }
  if (in_first) throw WindowError(std::string(what) + " lies beyond x = 40");
  return found;
}

template <class F>
Bracket bisect(F&& f, Bracket b, bool lo_negative) {
  while (b.hi - b.lo > kCriticalWidth) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (negative(f(mid)) == lo_negative) {
      b.lo = mid;
    } else {
      b.hi = mid;
    }
  }
  return b;
}

}  // namespace

CriticalPoint find_x_nu(double nu) {
  if (!std::isfinite(nu) || !(nu > -0.5)) throw DomainError("find_x_nu requires nu > -1/2");
  const double witness = std::sqrt(2.0 * (nu + 3.0));
  if (witness >= kMaxArgument) throw WindowError("x_nu lies beyond x = 40");
  auto f = [nu](double x) { return q_prime(nu + 1.0, x); };
  if (!negative(f(witness))) {
    throw FalsificationError("q_prime(nu+1, .) is not negative at sqrt(2(nu+3)) for nu = " + std::to_string(nu));
  }
  const Bracket b = bisect(f, unique_change(f, witness, true, "x_nu"), true);
  CriticalPoint cp;
  cp.kind = CriticalKind::XNu;
  cp.nu = nu;
  cp.value = 0.5 * (b.lo + b.hi);
  cp.bracket = {b.lo, b.hi, false, false};
  cp.lower_witness = witness;
  if (!(cp.value > witness)) throw FalsificationError("x_nu does not exceed sqrt(2(nu+3))");
  return cp;
}

CriticalPoint find_z_nu(double nu) {
  if (!std::isfinite(nu) || !(nu > -1.0) || !(nu < -0.5)) throw DomainError("find_z_nu requires nu in (-1, -1/2)");
  auto f = [nu](double x) { return r_prime(nu, x); };
  const double start = kOriginStandoff;
  if (negative(f(start))) throw FalsificationError("R_nu is not increasing near the origin");
  const Bracket b = bisect(f, unique_change(f, start, false, "z_nu"), false);
  CriticalPoint cp;
  cp.kind = CriticalKind::ZNu;
  cp.nu = nu;
  cp.value = 0.5 * (b.lo + b.hi);
  cp.bracket = {b.lo, b.hi, false, false};
  cp.lower_witness = bessel_zero(nu, 1).value;
  if (cp.value < cp.lower_witness) {
    throw FalsificationError("z_nu = " + std::to_string(cp.value) + " lies below j_{nu,1} = " +
                             std::to_string(cp.lower_witness));
  }
  return cp;
}

}  // namespace besselcert
