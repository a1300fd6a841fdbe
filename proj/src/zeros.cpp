#include "besselcert/zeros.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "besselcert/errors.hpp"
#include "besselcert/kernels.hpp"

namespace besselcert {

namespace {

constexpr double kScanStart = 0.1;
constexpr double kScanStep = 0.5;
constexpr double kBracketWidth = 1e-12;
constexpr int kMaxBisections = 200;

// Same sign as J_nu on x > 0; equals 1 at the origin.
double kernel(double nu, double x) { return eval_normalized(Family::J, nu, x, 0).value; }

BesselZero refine(double nu, int n, double lo, double hi, double f_lo) {
  int iterations = 0;
  while (hi - lo > kBracketWidth) {
    if (++iterations > kMaxBisections) {
      throw ConvergenceError("bisection for j_{" + std::to_string(nu) + "," + std::to_string(n) +
                             "} exceeded the iteration cap");
    }
    const double mid = 0.5 * (lo + hi);
    const double f_mid = kernel(nu, mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  double value = 0.5 * (lo + hi);
  // Newton polish with J-kernel' = -x J-kernel_{nu+1} / (2(nu+1)); kept only inside the bracket.
  const double f = kernel(nu, value);
  const double df = eval_normalized(Family::J, nu, value, 1).value;
  if (df != 0.0) {
    const double polished = value - f / df;
    if (polished >= lo && polished <= hi) value = polished;
  }

  BesselZero z;
  z.nu = nu;
  z.n = n;
  z.value = value;
  z.residual = std::abs(eval_raw(Family::J, nu, value).value);
  z.bracket_width = hi - lo;
  return z;
}

// Walks the scan grid 0, 0.1, 0.6, 1.1, ... , 40 and refines sign changes in order.
std::vector<BesselZero> scan_zeros(double nu, std::optional<int> count) {
  if (!(nu > -1.0) || !std::isfinite(nu)) throw PoleError("bessel zeros require nu > -1");
  std::vector<BesselZero> zeros;
  double a = 0.0;
  double f_a = 1.0;
  double b = kScanStart;
  while (a < kMaxArgument && (!count || static_cast<int>(zeros.size()) < *count)) {
    b = std::min(b, kMaxArgument);
    const double f_b = kernel(nu, b);
    const int index = static_cast<int>(zeros.size()) + 1;
    if (f_b == 0.0) {
      zeros.push_back({nu, index, b, std::abs(eval_raw(Family::J, nu, b).value), 0.0});
      f_a = -f_a;
    } else if ((f_b > 0.0) != (f_a > 0.0)) {
      zeros.push_back(refine(nu, index, a, b, f_a));
      f_a = f_b;
    } else {
      f_a = f_b;
    }
    a = b;
    b += kScanStep;
  }
  return zeros;
}

}  // namespace

BesselZero bessel_zero(double nu, int n) {
  if (n < 1) throw DomainError("zero index must be >= 1");
  const auto zeros = scan_zeros(nu, n);
  if (static_cast<int>(zeros.size()) < n) {
    throw WindowError("j_{" + std::to_string(nu) + "," + std::to_string(n) + "} lies beyond x = 40");
  }
  return zeros.back();
}

std::vector<BesselZero> bessel_zeros(double nu, int count) {
  if (count < 0) throw DomainError("zero count must be >= 0");
  auto zeros = scan_zeros(nu, count);
  if (static_cast<int>(zeros.size()) < count) {
    throw WindowError("only " + std::to_string(zeros.size()) + " zeros of J_" + std::to_string(nu) +
                      " lie inside x <= 40");
  }
  return zeros;
}

std::vector<BesselZero> bessel_zeros_in_window(double nu) { return scan_zeros(nu, std::nullopt); }

double mcmahon_zero(double nu, int n) {
  const double beta = (n + nu / 2.0 - 0.25) * std::numbers::pi;
  const double mu = 4.0 * nu * nu;
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e) -
         32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * std::pow(e, 5));
}

}  // namespace besselcert
