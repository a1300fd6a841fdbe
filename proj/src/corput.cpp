#include "besselcert/corput.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "besselcert/errors.hpp"
#include "besselcert/kernels.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

constexpr double kTolerance = 1e-12;
constexpr double kMaxGammaShape = 50.0;

std::string lower(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_scaled(CorputFamily f) { return f == CorputFamily::IScaled || f == CorputFamily::JScaled; }

Family kernel_family(CorputFamily f) {
  switch (f) {
    case CorputFamily::Trig:
    case CorputFamily::J:
    case CorputFamily::JScaled:
    case CorputFamily::JSpecial:
      return Family::J;
    case CorputFamily::K:
    case CorputFamily::KSpecial:
      return Family::K;
    default:
      return Family::I;
  }
}

double first_zero_or_window(double nu) {
  try {
    return bessel_zero(nu, 1).value;
  } catch (const WindowError&) {
    return kMaxArgument;
  }
}

// Closed range [lo, hi] of admissible arguments; open ends flagged.
struct ArgumentRange {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const {
    return std::isfinite(x) && (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  }
};

ArgumentRange local_i_range(double nu) {
  const double end = std::sqrt(2.0 * (nu + 3.0));
  return end <= kMaxArgument ? ArgumentRange{0.0, end, true, true} : ArgumentRange{0.0, kMaxArgument, true, false};
}

// Order check and argument range per family; empty when the order is outside.
std::optional<ArgumentRange> stated_range(CorputFamily family, double nu) {
  if (!std::isfinite(nu)) return std::nullopt;
  switch (family) {
    case CorputFamily::Hyperbolic:
    case CorputFamily::KSpecial:
      return ArgumentRange{0.0, kMaxArgument};
    case CorputFamily::IGlobal:
      if (!(nu > -1.0 && nu <= -0.5)) return std::nullopt;
      return ArgumentRange{0.0, kMaxArgument};
    case CorputFamily::ILocal:
      if (!(nu > -1.0)) return std::nullopt;
      return local_i_range(nu);
    case CorputFamily::IScaled:
      if (!(nu > -1.0)) return std::nullopt;
      return nu <= -0.5 ? ArgumentRange{0.0, kMaxArgument} : local_i_range(nu);
    case CorputFamily::ISpecial:
      return ArgumentRange{0.0, std::sqrt(7.0), true, true};
    case CorputFamily::Trig:
      return ArgumentRange{0.0, std::numbers::pi};
    case CorputFamily::J:
    case CorputFamily::JScaled:
      if (!(nu > -1.0)) return std::nullopt;
      return ArgumentRange{0.0, first_zero_or_window(nu + 1.0)};
    case CorputFamily::JSpecial:
      return ArgumentRange{0.0, first_zero_or_window(1.5)};
    case CorputFamily::K:
      if (!(nu >= 1.5)) return std::nullopt;
      return ArgumentRange{0.0, kMaxArgument};
    case CorputFamily::Normal:
      return ArgumentRange{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    case CorputFamily::Gamma:
      if (!(nu >= 1.0 && nu <= kMaxGammaShape)) return std::nullopt;
      return ArgumentRange{0.0, kMaxArgument};
  }
  return std::nullopt;
}

// Order actually used: the family's fixed order when it has one.
double effective_order(CorputFamily family, double nu) { return fixed_order(family).value_or(nu); }

double kernel_value(Family family, double nu, double x) {
  if (family == Family::K && x == 0.0) {
    const double c = std::exp2(nu - 1.0) * gamma_fn(nu);
    return c * c;
  }
  return eval_normalized(family, nu, x, 0).value;
}

double kernel_slope(Family family, double nu, double x) {
  if (family == Family::K && x == 0.0) return 0.0;  // nu > 1
  return eval_normalized(family, nu, x, 1).value;
}

double product_root(double p) { return std::sqrt(std::max(0.0, p)); }

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

Sides primary_sides(Family family, double nu, double a, double b) {
  const double lhs = std::abs(kernel_value(family, nu, a) - kernel_value(family, nu, b));
  const double rhs = std::abs(a - b) * product_root(kernel_slope(family, nu, a) * kernel_slope(family, nu, b));
  return {lhs, rhs};
}

// 2(nu+1)|g(a) - g(b)| against |a-b| sqrt(ab g_{nu+1}(a) g_{nu+1}(b)).
Sides scaled_sides(Family family, double nu, double a, double b) {
  const double lhs =
      2.0 * (nu + 1.0) * std::abs(kernel_value(family, nu, a) - kernel_value(family, nu, b));
  const double shifted = kernel_value(family, nu + 1.0, a) * kernel_value(family, nu + 1.0, b);
  return {lhs, std::abs(a - b) * product_root((a * b) * shifted)};
}

// ab |g_{1/2}(a) - g_{1/2}(b)| against |a-b| (ab)^{3/2} sqrt(g_{3/2}(a) g_{3/2}(b)) / 3.
Sides special_sides(Family family, double a, double b) {
  const double ab = a * b;
  const double lhs = ab * std::abs(kernel_value(family, 0.5, a) - kernel_value(family, 0.5, b));
  const double shifted = kernel_value(family, 1.5, a) * kernel_value(family, 1.5, b);
  return {lhs, std::abs(a - b) * std::pow(ab, 1.5) * product_root(shifted) / 3.0};
}

CorputCertificate finish(CorputCertificate c, const Sides& s) {
  c.lhs = s.lhs;
  c.rhs = s.rhs;
  c.margin = s.lhs - s.rhs;
  c.holds = within_tolerance(c.lhs, c.margin);
  return c;
}

// Phi(b) - Phi(a), differenced in whichever tail keeps both values small.
double normal_difference(double a, double b) {
  const double s = std::numbers::sqrt2;
  if (a >= 0.0 && b >= 0.0) return 0.5 * (std::erfc(a / s) - std::erfc(b / s));
  return normal_cdf(b) - normal_cdf(a);
}

// gamma(alpha, b) - gamma(alpha, a), through the upper function when both are past the mode.
double gamma_difference(double alpha, double a, double b) {
  if (std::min(a, b) >= alpha) return boost::math::tgamma(alpha, a) - boost::math::tgamma(alpha, b);
  return lower_incomplete_gamma(alpha, b) - lower_incomplete_gamma(alpha, a);
}

void require_gamma(double alpha, double a, double b) {
  if (!std::isfinite(alpha) || alpha < 1.0 || alpha > kMaxGammaShape) {
    throw DomainError("gamma distribution requires alpha in [1, 50], got " + std::to_string(alpha));
  }
  for (double x : {a, b}) {
    if (!std::isfinite(x) || x < 0.0 || x > kMaxArgument) {
      throw DomainError("gamma distribution requires arguments in [0, 40], got " + std::to_string(x));
    }
  }
}

}  // namespace

std::string_view to_string(CorputFamily family) {
  switch (family) {
    case CorputFamily::Hyperbolic:
      return "hyperbolic";
    case CorputFamily::IGlobal:
      return "I-global";
    case CorputFamily::ILocal:
      return "I-local";
    case CorputFamily::IScaled:
      return "I-scaled";
    case CorputFamily::ISpecial:
      return "I-special";
    case CorputFamily::Trig:
      return "trig";
    case CorputFamily::J:
      return "J";
    case CorputFamily::JScaled:
      return "J-scaled";
    case CorputFamily::JSpecial:
      return "J-special";
    case CorputFamily::K:
      return "K";
    case CorputFamily::KSpecial:
      return "K-special";
    case CorputFamily::Normal:
      return "normal";
    case CorputFamily::Gamma:
      return "gamma";
  }
  return "?";
}

CorputFamily parse_corput_family(std::string_view text) {
  const std::string s = lower(text);
  for (CorputFamily f : kAllCorputFamilies) {
    if (s == lower(to_string(f))) return f;
  }
  throw DomainError("unknown inequality family '" + std::string(text) + "'");
}

std::optional<double> fixed_order(CorputFamily family) {
  switch (family) {
    case CorputFamily::Hyperbolic:
    case CorputFamily::Trig:
      return -0.5;
    case CorputFamily::ISpecial:
    case CorputFamily::JSpecial:
      return 0.5;
    case CorputFamily::KSpecial:
      return 1.5;
    default:
      return std::nullopt;
  }
}

bool within_tolerance(double lhs, double margin) { return margin >= -kTolerance * (1.0 + std::abs(lhs)); }

CorputCertificate corput_check(CorputFamily family, double nu, double a, double b) {
  CorputCertificate c;
  c.family = family;
  c.nu_or_alpha = effective_order(family, nu);
  c.a = a;
  c.b = b;
  const auto range = stated_range(family, c.nu_or_alpha);
  c.domain_ok = range && range->contains(a) && range->contains(b);
  if (!c.domain_ok) {
    c.lhs = c.rhs = c.margin = std::numeric_limits<double>::quiet_NaN();
    return c;
  }

  const double order = c.nu_or_alpha;
  switch (family) {
    case CorputFamily::Normal:
      return corput_prob({DistKind::StandardNormal, 1.0}, a, b);
    case CorputFamily::Gamma:
      return corput_prob({DistKind::Gamma, order}, a, b);
    case CorputFamily::ISpecial:
    case CorputFamily::JSpecial:
      return finish(c, special_sides(kernel_family(family), a, b));
    case CorputFamily::KSpecial: {
      Sides s = primary_sides(Family::K, order, a, b);
      s.lhs *= 2.0 / std::numbers::pi;
      s.rhs *= 2.0 / std::numbers::pi;
      return finish(c, s);
    }
    default:
      break;
  }

  const Family kf = kernel_family(family);
  if (!is_scaled(family)) return finish(c, primary_sides(kf, order, a, b));

  const Sides scaled = scaled_sides(kf, order, a, b);
  const Sides primary = primary_sides(kf, order, a, b);
  c = finish(c, scaled);
  const double factor = 2.0 * (order + 1.0);
  c.equivalence_gap = std::abs(c.margin - factor * (primary.lhs - primary.rhs)) / (1.0 + std::abs(c.lhs));
  return c;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double lower_incomplete_gamma(double alpha, double x) {
  require_gamma(alpha, x, x);
  if (x == 0.0) return 0.0;
  return boost::math::tgamma_lower(alpha, x);
}

CorputCertificate corput_prob(const DistSpec& dist, double a, double b) {
  CorputCertificate c;
  c.a = a;
  c.b = b;
  c.domain_ok = true;
  if (dist.kind == DistKind::StandardNormal) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("normal distribution needs finite arguments");
    c.family = CorputFamily::Normal;
    c.nu_or_alpha = 0.0;
    const double lhs = std::abs(normal_difference(a, b));
    // sqrt(phi(a) phi(b)) = exp(-(a^2 + b^2)/4) / sqrt(2 pi)
    const double rhs = std::abs(a - b) * std::exp(-0.25 * (a * a + b * b)) / std::sqrt(2.0 * std::numbers::pi);
    return finish(c, {lhs, rhs});
  }
  require_gamma(dist.alpha, a, b);
  c.family = CorputFamily::Gamma;
  c.nu_or_alpha = dist.alpha;
  const double lhs = std::abs(gamma_difference(dist.alpha, a, b));
  const double rhs = std::abs(a - b) * std::pow(a * b, 0.5 * (dist.alpha - 1.0)) * std::exp(-0.5 * (a + b));
  return finish(c, {lhs, rhs});
}

std::string_view to_string(ChainTarget target) {
  switch (target) {
    case ChainTarget::I:
      return "I";
    case ChainTarget::MinusJ:
      return "minus-J";
    case ChainTarget::MinusK:
      return "minus-K";
  }
  return "?";
}

bool HermiteHadamardChain::geometric_link() const {
  return within_tolerance(mean_value, mean_value - geo_mean);
}

bool HermiteHadamardChain::midpoint_link() const {
  return within_tolerance(mean_value, mean_value - midpoint_value);
}

HermiteHadamardChain hh_chain_check(ChainTarget target, double nu, double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) throw DomainError("hh_chain_check requires b > a");
  std::optional<ArgumentRange> range;
  Family family = Family::I;
  double sign = 1.0;
  switch (target) {
    case ChainTarget::I:
      range = stated_range(nu <= -0.5 ? CorputFamily::IGlobal : CorputFamily::ILocal, nu);
      break;
    case ChainTarget::MinusJ:
      family = Family::J;
      sign = -1.0;
      range = stated_range(CorputFamily::J, nu);
      break;
    case ChainTarget::MinusK:
      family = Family::K;
      sign = -1.0;
      range = stated_range(CorputFamily::K, nu);
      break;
  }
  if (!range || !range->contains(a) || !range->contains(b)) {
    throw DomainError("hh_chain_check: [" + std::to_string(a) + ", " + std::to_string(b) +
                      "] outside the interval where the derivative is log-concave for nu = " + std::to_string(nu));
  }
  HermiteHadamardChain chain;
  chain.mean_value = sign * (kernel_value(family, nu, b) - kernel_value(family, nu, a)) / (b - a);
  chain.midpoint_value = sign * kernel_slope(family, nu, 0.5 * (a + b));
  chain.geo_mean = product_root(kernel_slope(family, nu, a) * kernel_slope(family, nu, b));
  return chain;
}

SamplingDomain sampling_domain(CorputFamily family) {
  switch (family) {
    case CorputFamily::IGlobal:
      return {-0.99, -0.5, true};
    case CorputFamily::ILocal:
    case CorputFamily::IScaled:
    case CorputFamily::J:
    case CorputFamily::JScaled:
      return {-0.99, 10.0, true};
    case CorputFamily::K:
      return {1.5, 10.0, true};
    case CorputFamily::Gamma:
      return {1.0, 10.0, true};
    case CorputFamily::Normal:
      return {0.0, 0.0, false};
    default: {
      const double v = *fixed_order(family);
      return {v, v, false};
    }
  }
}

std::vector<CorputCertificate> random_certificates(CorputFamily family, std::optional<double> nu, int pairs,
                                                   std::uint64_t seed) {
  if (pairs < 0) throw DomainError("pair count must be >= 0");
  const SamplingDomain domain = sampling_domain(family);
  UnitSampler sampler(seed);
  std::vector<CorputCertificate> out;
  out.reserve(static_cast<std::size_t>(pairs));
  const bool constant_order = nu.has_value() || !domain.draw_order;
  const double constant = effective_order(family, nu.value_or(domain.nu_lo));
  const auto constant_range = constant_order ? stated_range(family, constant) : std::nullopt;
  for (int i = 0; i < pairs; ++i) {
    const double order =
        constant_order ? constant : effective_order(family, sampler.uniform(domain.nu_lo, domain.nu_hi));
    const auto range = constant_order ? constant_range : stated_range(family, order);
    if (!range) {
      throw DomainError("order " + std::to_string(order) + " outside the domain of " +
                        std::string(to_string(family)));
    }
    double lo = range->lo;
    double hi = range->hi;
    if (family == CorputFamily::Normal) {
      lo = -8.0;
      hi = 8.0;
    }
    const double a = sampler.uniform(lo, hi);
    const double b = sampler.uniform(lo, hi);
    out.push_back(corput_check(family, order, a, b));
  }
  std::stable_sort(out.begin(), out.end(), [](const CorputCertificate& x, const CorputCertificate& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  return out;
}

}  // namespace besselcert
