#pragma once

// Van der Corput type inequalities |f(a) - f(b)| >= |a - b| sqrt(f'(a) f'(b))
// for functions with a log-concave positive derivative, instantiated for the
// Bessel kernels, their elementary special cases and two distribution functions.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace besselcert {

enum class CorputFamily {
  Hyperbolic,  ///< |cosh a - cosh b| >= |a-b| sqrt(sinh a sinh b), via the I-kernel at nu = -1/2
  IGlobal,     ///< I-kernel, nu in (-1, -1/2], a, b in [0, 40]
  ILocal,      ///< I-kernel, nu > -1, a, b in (0, sqrt(2(nu+3)))
  IScaled,     ///< 2(nu+1)|I(a) - I(b)| >= |a-b| sqrt(ab I_{nu+1}(a) I_{nu+1}(b)), either I domain
  ISpecial,    ///< ab |I_{1/2}(a) - I_{1/2}(b)| form, a, b in (0, sqrt 7)
  Trig,        ///< |cos a - cos b| >= |a-b| sqrt(sin a sin b), via the J-kernel at nu = -1/2
  J,           ///< J-kernel, nu > -1, a, b in [0, j_{nu+1,1}]
  JScaled,     ///< 2(nu+1)|J(a) - J(b)| >= |a-b| sqrt(ab J_{nu+1}(a) J_{nu+1}(b))
  JSpecial,    ///< ab |J_{1/2}(a) - J_{1/2}(b)| form, a, b in [0, j_{3/2,1}]
  K,           ///< K-kernel, nu >= 3/2, a, b in [0, 40]
  KSpecial,    ///< K-kernel at nu = 3/2 scaled by 2/pi, a, b in [0, 40]
  Normal,      ///< standard normal distribution function, any real a, b
  Gamma,       ///< lower incomplete gamma, alpha in [1, 50], a, b in [0, 40]
};

inline constexpr CorputFamily kAllCorputFamilies[] = {
    CorputFamily::Hyperbolic, CorputFamily::IGlobal, CorputFamily::ILocal, CorputFamily::IScaled,
    CorputFamily::ISpecial,   CorputFamily::Trig,    CorputFamily::J,      CorputFamily::JScaled,
    CorputFamily::JSpecial,   CorputFamily::K,       CorputFamily::KSpecial, CorputFamily::Normal,
    CorputFamily::Gamma,
};

std::string_view to_string(CorputFamily family);
CorputFamily parse_corput_family(std::string_view text);

/// Order fixed by the family (-1/2, 1/2 or 3/2), if any.
std::optional<double> fixed_order(CorputFamily family);

struct CorputCertificate {
  CorputFamily family = CorputFamily::Hyperbolic;
  double nu_or_alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs - rhs
  double margin = 0.0;
  /// Empty outside the stated domain.
  std::optional<bool> holds;
  bool domain_ok = false;
  /// Scaled forms only: relative disagreement of the scaled sides with
  /// 2(nu+1) times the primary sides.
  std::optional<double> equivalence_gap;
};

/// Tolerance: holds iff margin >= -1e-12 (1 + |lhs|).
bool within_tolerance(double lhs, double margin);

/// Evaluates both sides through the kernels. nu is ignored for families with
/// a fixed order and read as alpha for Gamma. Outside the stated domain the
/// certificate has domain_ok = false and no verdict.
CorputCertificate corput_check(CorputFamily family, double nu, double a, double b);

double normal_cdf(double x);
double normal_pdf(double x);

/// gamma(alpha, x) for alpha in [1, 50], x in [0, 40].
double lower_incomplete_gamma(double alpha, double x);

enum class DistKind { StandardNormal, Gamma };

struct DistSpec {
  DistKind kind = DistKind::StandardNormal;
  double alpha = 1.0;
};

/// Inequality for a distribution with log-concave density. Throws DomainError
/// for gamma with alpha < 1 or a negative argument.
CorputCertificate corput_prob(const DistSpec& dist, double a, double b);

enum class ChainTarget {
  I,       ///< I-kernel
  MinusJ,  ///< -J-kernel
  MinusK,  ///< -K-kernel
};

std::string_view to_string(ChainTarget target);

struct HermiteHadamardChain {
  /// (f(b) - f(a)) / (b - a)
  double mean_value = 0.0;
  /// f'((a + b) / 2)
  double midpoint_value = 0.0;
  /// sqrt(f'(a) f'(b))
  double geo_mean = 0.0;

  bool geometric_link() const;
  bool midpoint_link() const;
};

/// Requires b > a inside an interval where f' is positive and log-concave.
HermiteHadamardChain hh_chain_check(ChainTarget target, double nu, double a, double b);

/// Parameter and argument ranges used for random sampling of a family.
struct SamplingDomain {
  double nu_lo = 0.0;
  double nu_hi = 0.0;
  /// Whether to draw the order; false for fixed-order and the normal family.
  bool draw_order = false;
};

SamplingDomain sampling_domain(CorputFamily family);

/// Deterministic uniform pairs inside the family's stated domain. With
/// `nu` unset, each pair draws its own order from sampling_domain(family).
/// Certificates are sorted by (a, b).
std::vector<CorputCertificate> random_certificates(CorputFamily family, std::optional<double> nu, int pairs,
                                                   std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne Twister.
class UnitSampler {
 public:
  explicit UnitSampler(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace besselcert
