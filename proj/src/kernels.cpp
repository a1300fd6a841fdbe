#include "besselcert/kernels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "besselcert/errors.hpp"
#include "series.hpp"

namespace besselcert {

using detail::DoubleDouble;
using detail::SeriesSum;
using detail::to_double;
using detail::unit_roundoff;
using detail::WideReal;

namespace {

// Test builds set BESSELCERT_FAULT to perturb one kernel constant.
#ifndef BESSELCERT_FAULT
#define BESSELCERT_FAULT 0
#endif
constexpr double kSeriesArgumentScale = BESSELCERT_FAULT == 1 ? 0.2500001 : 0.25;
constexpr double kDerivativeOrderShift = BESSELCERT_FAULT == 2 ? 1.0000001 : 1.0;
constexpr double kReflectionPiScale = BESSELCERT_FAULT == 3 ? 1.0000001 : 1.0;

constexpr double kDoubleRoundoff = std::numeric_limits<double>::epsilon() / 2;

// Orders within this distance of an integer are interpolated for K.
constexpr double kIntegerOrderGuard = 1e-6;
constexpr double kInterpolationStep = 1e-4;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_order(Family family, double nu) {
  require_finite(nu, "order");
  if (family == Family::K) {
    if (!(nu > 0.0)) throw PoleError("K-kernel requires nu > 0, got " + std::to_string(nu));
    return;
  }
  if (!(nu > -1.0)) throw PoleError("I/J kernels require nu > -1, got " + std::to_string(nu));
}

void require_window(double x, bool allow_zero) {
  require_finite(x, "argument");
  if (x < 0.0 || (x == 0.0 && !allow_zero) || x > kMaxArgument) {
    throw DomainError("argument " + std::to_string(x) + " outside the supported window " +
                      (allow_zero ? "[0, 40]" : "(0, 40]"));
  }
}

// Value of a normalized I/J kernel derivative in working precision Real.
template <class Real>
struct KernelValue {
  Real value{};
  double error = 0.0;
  int terms = 0;
};

template <class Real>
SeriesSum<Real> shifted_series(double nu, int shift, double x, bool alternating) {
  const Real b = Real(nu) + Real(shift + 1);
  Real z = Real(x) * Real(x) * Real(kSeriesArgumentScale);
  if (alternating) z = -z;
  return detail::hypergeometric_0f1(b, z);
}

template <class Real>
KernelValue<Real> normalized_ij(double nu, double x, int order, bool alternating) {
  using std::abs;
  KernelValue<Real> out;
  const Real sign(alternating ? -1.0 : 1.0);
  const Real nu1 = Real(nu) + Real(kDerivativeOrderShift);
  if (order == 0) {
    const auto s0 = shifted_series<Real>(nu, 0, x, alternating);
    out.value = s0.sum;
    out.error = s0.error_bound();
    out.terms = s0.terms;
  } else if (order == 1) {
    // 2(nu+1) K'(x) = +-x K_{nu+1}(x)
    const auto s1 = shifted_series<Real>(nu, 1, x, alternating);
    const Real coef = sign * Real(x) / (Real(2) * nu1);
    out.value = coef * s1.sum;
    out.error = std::abs(to_double(coef)) * s1.error_bound();
    out.terms = s1.terms;
  } else {
    // K'' = +-K_{nu+1}/(2(nu+1)) + x^2 K_{nu+2} / (4(nu+1)(nu+2))
    const auto s1 = shifted_series<Real>(nu, 1, x, alternating);
    const auto s2 = shifted_series<Real>(nu, 2, x, alternating);
    const Real c1 = sign / (Real(2) * nu1);
    const Real c2 = Real(x) * Real(x) / (Real(4) * nu1 * (nu1 + Real(1)));
    out.value = c1 * s1.sum + c2 * s2.sum;
    out.error = std::abs(to_double(c1)) * s1.error_bound() + std::abs(to_double(c2)) * s2.error_bound() +
                8.0 * unit_roundoff<Real>() *
                    (std::abs(to_double(c1 * s1.sum)) + std::abs(to_double(c2 * s2.sum)));
    out.terms = s1.terms + s2.terms;
  }
  return out;
}

EvalResult normalized_ij_result(Family family, double nu, double x, int order) {
  if (family == Family::I) {
    const auto kv = normalized_ij<double>(nu, x, order, false);
    return {kv.value, kv.error + 4.0 * kDoubleRoundoff * std::abs(kv.value), kv.terms};
  }
  const auto kv = normalized_ij<DoubleDouble>(nu, x, order, true);
  const double value = to_double(kv.value);
  return {value, kv.error + kDoubleRoundoff * std::abs(value), kv.terms};
}

// ---- K via (pi/2)(I_{-nu} - I_nu)/sin(nu pi), carried out in WideReal ----

struct WideK {
  WideReal value{};
  double error = 0.0;
  int terms = 0;
};

// nu > 0 and not an integer.
WideK reflection_k(const WideReal& nu, double x) {
  using boost::multiprecision::abs;
  using boost::multiprecision::pow;
  const WideReal half = WideReal(x) / 2;
  const WideReal q = half * half;
  // The two halves cancel by up to e^{2x}, so both are summed to working precision.
  const double cutoff = unit_roundoff<WideReal>();
  const auto s_minus = detail::hypergeometric_0f1(WideReal(1) - nu, q, cutoff);
  const auto s_plus = detail::hypergeometric_0f1(WideReal(1) + nu, q, cutoff);
  const WideReal gamma_nu = boost::math::tgamma(nu);
  const WideReal power = pow(half, nu);
  const WideReal pi = boost::math::constants::pi<WideReal>() * WideReal(kReflectionPiScale);

  // K = (1/2)[ Gamma(nu) (x/2)^-nu S_{-nu} - pi (x/2)^nu S_nu / (Gamma(nu+1) sin(nu pi)) ]
  const WideReal c_minus = gamma_nu / power;
  const WideReal c_plus = pi * power / (nu * gamma_nu * boost::math::sin_pi(nu));
  const WideReal term_minus = c_minus * s_minus.sum;
  const WideReal term_plus = c_plus * s_plus.sum;

  WideK out;
  out.value = (term_minus - term_plus) / 2;
  const double cm = std::abs(to_double(c_minus));
  const double cp = std::abs(to_double(c_plus));
  out.error = 0.5 * (cm * s_minus.error_bound() + cp * s_plus.error_bound()) +
              16.0 * unit_roundoff<WideReal>() * (std::abs(to_double(term_minus)) + std::abs(to_double(term_plus)));
  out.terms = s_minus.terms + s_plus.terms;
  return out;
}

WideK wide_bessel_k(double mu, double x) {
  const double order = std::abs(mu);
  const double nearest = std::round(order);
  const double offset = order - nearest;
  if (std::abs(offset) >= kIntegerOrderGuard) return reflection_k(WideReal(order), x);

  // Three-point quadratic interpolation in the order from nodes nearest + {-h, h, 2h};
  // a fourth node (-2h) feeds the cubic used only for the error estimate.
  constexpr double h = kInterpolationStep;
  const std::array<double, 4> nodes{-h, h, 2 * h, -2 * h};
  std::array<WideK, 4> values;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = reflection_k(abs(WideReal(nearest) + WideReal(nodes[i])), x);
  }
  const WideReal t(offset);
  auto lagrange = [&](std::size_t count) {
    WideReal acc(0);
    for (std::size_t i = 0; i < count; ++i) {
      WideReal weight(1);
      for (std::size_t j = 0; j < count; ++j) {
        if (j != i) weight *= (t - WideReal(nodes[j])) / (WideReal(nodes[i]) - WideReal(nodes[j]));
      }
      acc += weight * values[i].value;
    }
    return acc;
  };
  const WideReal quadratic = lagrange(3);
  const WideReal cubic = lagrange(4);

  WideK out;
  out.value = quadratic;
  // The cubic correction matches the leading remainder term; doubling covers the rest.
  out.error = 2.0 * std::abs(to_double(cubic - quadratic));
  for (std::size_t i = 0; i < 3; ++i) out.error += 2.0 * values[i].error;
  for (const auto& v : values) out.terms += v.terms;
  return out;
}

double k_prefactor(double nu) { return std::exp2(nu - 1.0) * std::tgamma(nu); }

EvalResult normalized_k(double nu, double x, int order) {
  const double c = k_prefactor(nu);
  if (order == 0) {
    const WideK k = wide_bessel_k(nu, x);
    const double scale = c * std::pow(x, nu);
    const double value = scale * to_double(k.value);
    return {value, scale * k.error + 8.0 * kDoubleRoundoff * std::abs(value), k.terms};
  }
  if (order == 1) {
    // K'(x) = -2^{nu-1} Gamma(nu) x^nu K_{nu-1}(x)
    const WideK k = wide_bessel_k(nu - 1.0, x);
    const double scale = c * std::pow(x, nu);
    const double value = -scale * to_double(k.value);
    return {value, scale * k.error + 8.0 * kDoubleRoundoff * std::abs(value), k.terms};
  }
  // K''(x) = 2^{nu-1} Gamma(nu) x^{nu-1} [x K_{nu-2}(x) - K_{nu-1}(x)]
  const WideK k1 = wide_bessel_k(nu - 1.0, x);
  const WideK k2 = wide_bessel_k(nu - 2.0, x);
  const WideReal bracket = WideReal(x) * k2.value - k1.value;
  const double scale = c * std::pow(x, nu - 1.0);
  const double value = scale * to_double(bracket);
  return {value, scale * (x * k2.error + k1.error) + 8.0 * kDoubleRoundoff * std::abs(value), k1.terms + k2.terms};
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::I:
      return "I";
    case Family::J:
      return "J";
    case Family::K:
      return "K";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  if (s.ends_with("-KERNEL")) s.resize(s.size() - 7);
  if (s == "I") return Family::I;
  if (s == "J") return Family::J;
  if (s == "K") return Family::K;
  throw DomainError("unknown family '" + std::string(text) + "'");
}

double gamma_fn(double z) {
  require_finite(z, "gamma argument");
  if (!(z > 0.0) || z > 171.0) throw DomainError("gamma_fn requires 0 < z <= 171, got " + std::to_string(z));
  return std::tgamma(z);
}

double pochhammer(double a, int n) {
  if (n < 0) throw DomainError("pochhammer requires n >= 0");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

EvalResult eval_normalized(Family family, double nu, double x, int order) {
  require_order(family, nu);
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
  require_finite(x, "argument");
  if (family == Family::K) {
    require_window(x, false);
    return normalized_k(nu, x, order);
  }
  if (family == Family::I && order == 0 && x < 0.0) x = -x;  // even function
  require_window(x, true);
  return normalized_ij_result(family, nu, x, order);
}

EvalResult eval_raw(Family family, double nu, double x) {
  require_order(family, nu);
  require_window(x, false);
  if (family == Family::K) {
    const WideK k = wide_bessel_k(nu, x);
    const double value = to_double(k.value);
    return {value, k.error + kDoubleRoundoff * std::abs(value), k.terms};
  }
  // I_nu(x) = (x/2)^nu / Gamma(nu+1) * kernel(x)
  const EvalResult kernel = normalized_ij_result(family, nu, x, 0);
  const double scale = std::pow(x / 2.0, nu) / std::tgamma(nu + 1.0);
  const double value = scale * kernel.value;
  return {value, scale * kernel.abs_error_bound + 8.0 * kDoubleRoundoff * std::abs(value), kernel.terms_used};
}

EvalResult bessel_k(double mu, double x) {
  require_finite(mu, "order");
  require_window(x, false);
  const WideK k = wide_bessel_k(mu, x);
  const double value = to_double(k.value);
  return {value, k.error + kDoubleRoundoff * std::abs(value), k.terms};
}

double half_integer_oracle(Family family, double nu, double x, int order) {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
  require_finite(x, "argument");
  using L = long double;
  const L t = x;
  const int twice_nu = static_cast<int>(std::lround(2.0 * nu));
  if (std::abs(2.0 * nu - twice_nu) > 0.0) throw DomainError("oracle needs a half-integer order");

  if (family == Family::K) {
    if (twice_nu != 3) throw DomainError("K oracle only at nu = 3/2");
    if (x < 0.0) throw DomainError("K oracle requires x >= 0");
    const L half_pi = std::numbers::pi_v<L> / 2;
    const L e = std::exp(-t);
    switch (order) {
      case 0:
        return static_cast<double>(half_pi * (t + 1) * e);
      case 1:
        return static_cast<double>(-half_pi * t * e);
      default:
        return static_cast<double>(half_pi * (t - 1) * e);
    }
  }

  const bool hyperbolic = family == Family::I;
  const L c = hyperbolic ? std::cosh(t) : std::cos(t);
  const L s = hyperbolic ? std::sinh(t) : std::sin(t);
  // d/dx c = sgn * s with sgn = +1 (cosh) or -1 (cos); d/dx s = c.
  const L sgn = hyperbolic ? 1 : -1;

  if (twice_nu == -1) {
    switch (order) {
      case 0:
        return static_cast<double>(c);
      case 1:
        return static_cast<double>(sgn * s);
      default:
        return static_cast<double>(sgn * c);
    }
  }
  if (twice_nu != 1 && twice_nu != 3) throw DomainError("oracle only at nu in {-1/2, 1/2, 3/2}");

  if (x == 0.0) {
    // series limits: 1, 0, +-1/(2(nu+1))
    switch (order) {
      case 0:
        return 1.0;
      case 1:
        return 0.0;
      default:
        return sgn / (2.0 * (nu + 1.0));
    }
  }
  const L x2 = t * t;
  const L x3 = x2 * t;
  const L x4 = x3 * t;
  const L x5 = x4 * t;
  if (twice_nu == 1) {
    // s/x
    switch (order) {
      case 0:
        return static_cast<double>(s / t);
      case 1:
        return static_cast<double>(c / t - s / x2);
      default:
        return static_cast<double>(sgn * s / t - 2 * c / x2 + 2 * s / x3);
    }
  }
  // I: 3(cosh/x^2 - sinh/x^3);  J: 3(sin/x^3 - cos/x^2)
  if (hyperbolic) {
    switch (order) {
      case 0:
        return static_cast<double>(3 * (c / x2 - s / x3));
      case 1:
        return static_cast<double>(3 * (s / x2 - 3 * c / x3 + 3 * s / x4));
      default:
        return static_cast<double>(3 * (c / x2 - 5 * s / x3 + 12 * c / x4 - 12 * s / x5));
    }
  }
  switch (order) {
    case 0:
      return static_cast<double>(3 * (s / x3 - c / x2));
    case 1:
      return static_cast<double>(3 * (s / x2 + 3 * c / x3 - 3 * s / x4));
    default:
      return static_cast<double>(3 * (c / x2 - 5 * s / x3 - 12 * c / x4 + 12 * s / x5));
  }
}

}  // namespace besselcert
