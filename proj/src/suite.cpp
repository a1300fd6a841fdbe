#include "besselcert/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "besselcert/analysis.hpp"
#include "besselcert/corput.hpp"
#include "besselcert/kernels.hpp"
#include "besselcert/ratios.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {

namespace {

template <class... Args>
std::string format(const char* pattern, Args... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failures and keeps the first few messages.
class Tally {
 public:
  void fail(const std::string& message) {
    if (failures_++ < kKeep) messages_ += (messages_.empty() ? "" : "; ") + message;
  }
  void require(bool ok, const std::string& message) {
    ++checked_;
    if (!ok) fail(message);
  }
  void worst(double v) { worst_ = std::max(worst_, v); }
  double worst() const { return worst_; }
  int failures() const { return failures_; }

  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    std::string detail = format("%d of %d checks failed: ", failures_, checked_) + messages_;
    if (failures_ > kKeep) detail += "; ...";
    return {false, detail};
  }

 private:
  static constexpr int kKeep = 4;
  int checked_ = 0;
  int failures_ = 0;
  double worst_ = 0.0;
  std::string messages_;
};

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

const double kOracleGrid[] = {0.1, 0.5, 1, 2, 5, 10, 20};

Outcome closed_form_oracles() {
  using L = long double;
  struct Identity {
    const char* name;
    Family family;
    double nu;
    std::function<L(L)> f;
  };
  const std::vector<Identity> identities = {
      {"cosh", Family::I, -0.5, [](L x) { return std::cosh(x); }},
      {"sinh(x)/x", Family::I, 0.5, [](L x) { return std::sinh(x) / x; }},
      {"3(x cosh x - sinh x)/x^3", Family::I, 1.5,
       [](L x) { return 3 * (x * std::cosh(x) - std::sinh(x)) / (x * x * x); }},
      {"cos", Family::J, -0.5, [](L x) { return std::cos(x); }},
      {"sin(x)/x", Family::J, 0.5, [](L x) { return std::sin(x) / x; }},
      {"3(sin x - x cos x)/x^3", Family::J, 1.5,
       [](L x) { return 3 * (std::sin(x) - x * std::cos(x)) / (x * x * x); }},
      {"(pi/2)(x+1)e^-x", Family::K, 1.5,
       [](L x) { return std::numbers::pi_v<L> / 2 * (x + 1) * std::exp(-x); }},
  };
  Tally tally;
  for (const auto& id : identities) {
    for (double x : kOracleGrid) {
      const double value = eval_normalized(id.family, id.nu, x, 0).value;
      const double err = relative_error(value, static_cast<double>(id.f(x)));
      tally.worst(err);
      tally.require(err <= 1e-12, format("%s at x=%g rel err %.3g", id.name, x, err));
    }
  }
  return tally.outcome(format("7 identities x 7 points, worst rel err %.3g", tally.worst()));
}

Outcome pinned_zero() {
  const auto z = bessel_zero(1.5, 1);
  const double diff = std::abs(z.value - 4.493409457);
  return {diff <= 1e-8, format("j_{3/2,1} = %.12f, |diff| = %.3g", z.value, diff)};
}

Outcome ode_residual() {
  Tally tally;
  for (double nu : {-0.5, 0.0, 1.0, 2.7}) {
    const auto grid = geometric_grid({0.05, kMaxArgument, false, false}, 64);
    for (double x : grid) {
      // y = p g with p = x^nu / (2^nu Gamma(nu+1)) and g the I-kernel; derivatives from the kernel series
      const double y = eval_raw(Family::I, nu, x).value;
      const double g = eval_normalized(Family::I, nu, x, 0).value;
      const double g1 = eval_normalized(Family::I, nu, x, 1).value;
      const double g2 = eval_normalized(Family::I, nu, x, 2).value;
      const double p = y / g;
      const double y1 = p * (nu * g / x + g1);
      const double y2 = p * (nu * (nu - 1.0) * g / (x * x) + 2.0 * nu * g1 / x + g2);
      const double residual = x * x * y2 + x * y1 - (x * x + nu * nu) * y;
      const double scale = std::max(std::abs(x * x * y2), std::abs(x * x * y));
      const double rel = std::abs(residual) / scale;
      tally.worst(rel);
      tally.require(rel <= 1e-7, format("nu=%g x=%g residual %.3g", nu, x, rel));
    }
  }
  return tally.outcome(format("4 orders x 64 points, worst relative residual %.3g", tally.worst()));
}

// Certified-sign scan; failures report the offending point and value.
void require_scan(Tally& tally, Target target, double nu, const Interval& interval, int points, Sign sign) {
  const auto report = scan_concavity(target, nu, interval, points);
  for (const auto& p : report.grid) {
    tally.require(certified(p.d2, sign),
                  format("%s nu=%g x=%.6g d2=%.3g", std::string(to_string(target)).c_str(), nu, p.x, p.d2));
  }
}

Outcome theorem_1a() {
  Tally tally;
  int bad_points = 0;
  for (double nu : {-0.95, -0.75, -0.55, -0.5}) {
    const auto report = scan_concavity(Target::IPrime, nu, {0.0, kMaxArgument, true, false}, 128);
    for (const auto& p : report.grid) {
      const bool ok = certified(p.d2, Sign::Negative);
      if (!ok) ++bad_points;
      // at nu = -1/2 the function is -1/sinh^2 x in closed form
      const std::string exact = nu == -0.5 ? format(" (exact %.3g)", -1.0 / std::pow(std::sinh(p.x), 2)) : "";
      tally.require(ok, format("nu=%g x=%.4g q'=%.3g", nu, p.x, p.d2) + exact);
    }
  }
  return tally.outcome(format("4 orders x 128 points, %d below margin", bad_points));
}

Outcome theorem_1bc() {
  Tally tally;
  for (double nu : {-0.5, 0.0, 1.0, 5.0, 10.0}) {
    require_scan(tally, Target::IPrime, nu, {0.0, std::sqrt(2.0 * (nu + 3.0)), true, true}, 128, Sign::Negative);
  }
  std::string values;
  for (double nu : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const auto cp = find_x_nu(nu);
    tally.require(cp.value > std::sqrt(2.0 * (nu + 3.0)), format("x_nu(%g) = %g below bound", nu, cp.value));
    const double before = q_prime(nu + 1.0, cp.value - 0.1);
    const double after = q_prime(nu + 1.0, cp.value + 0.1);
    tally.require(before < 0.0 && after > 0.0, format("x_nu(%g) sign pattern %g, %g", nu, before, after));
    values += format("%s%g:%.10f", values.empty() ? "" : ", ", nu, cp.value);
  }
  return tally.outcome("log-concave below sqrt(2(nu+3)); x_nu = {" + values + "}");
}

Outcome remark_1() {
  Tally tally;
  for (double nu : {-0.5, 0.0, 1.0, 5.0, 10.0}) {
    require_scan(tally, Target::IPrime, nu, {0.0, std::sqrt(2.0 * (nu + 2.0)), true, true}, 64, Sign::Negative);
    require_scan(tally, Target::I, nu, {0.0, std::sqrt(2.0 * (nu + 1.0) * (nu + 2.0)), true, true}, 64,
                 Sign::Positive);
  }
  return tally.outcome("I-prime log-concave on (0, sqrt(2(nu+2))), I log-convex on (0, sqrt(2(nu+1)(nu+2)))");
}

Outcome theorem_2() {
  Tally tally;
  for (double nu : {-0.5, 0.0, 1.0, 1.5}) {
    const double end = target_domain_end(Target::MinusJPrime, nu);
    require_scan(tally, Target::MinusJPrime, nu, {0.0, end, true, true}, 128, Sign::Negative);
  }
  const double end = target_domain_end(Target::MinusJPrime, -0.5);
  for (double x : geometric_grid({0.0, end, true, true}, 128)) {
    const double d2 = log_deriv2(Target::MinusJPrime, -0.5, x);
    const double exact = -1.0 / (std::sin(x) * std::sin(x));
    const double err = relative_error(d2, exact);
    tally.worst(err);
    tally.require(err <= 1e-10, format("nu=-1/2 x=%g vs -1/sin^2 rel err %.3g", x, err));
  }
  return tally.outcome(format("4 orders on (0, j_{nu+1,1} - 1e-3); nu=-1/2 vs -1/sin^2 worst rel err %.3g",
                              tally.worst()));
}

Outcome theorem_3() {
  Tally tally;
  for (double nu : {1.5, 2.0, 5.0}) {
    require_scan(tally, Target::MinusKPrime, nu, {0.05, kMaxArgument, false, false}, 128, Sign::Negative);
  }
  for (double x : geometric_grid({0.05, kMaxArgument, false, false}, 128)) {
    const double d2 = log_deriv2(Target::MinusKPrime, 1.5, x);
    const double err = relative_error(d2, -1.0 / (x * x));
    tally.worst(err);
    tally.require(err <= 1e-10, format("nu=3/2 x=%g vs -1/x^2 rel err %.3g", x, err));
  }
  return tally.outcome(format("3 orders on [0.05, 40]; nu=3/2 vs -1/x^2 worst rel err %.3g", tally.worst()));
}

Outcome ratio_bounds() {
  Tally tally;
  const auto grid = geometric_grid({0.01, kMaxArgument, false, false}, 64);
  for (double nu : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double x : grid) {
      const auto s = bound_segura(nu, x);
      tally.require(s.holds, format("Segura nu=%g x=%g slack %.3g", nu, x, s.slack));
    }
  }
  for (double nu : {0.0, 0.1, 0.25, 0.5, 1.0, 5.0, 10.0}) {
    for (double x : grid) {
      const auto a = bound_amos(nu, x);
      tally.require(a.holds, format("Amos nu=%g x=%g slack %.3g", nu, x, a.slack));
    }
  }
  for (double nu : {0.1, 0.25, 0.4}) {
    for (double x : geometric_grid({2.0, kMaxArgument, false, false}, 32)) {
      tally.require(ratio_state(nu, x).R * x > 1.0, format("R x <= 1 at nu=%g x=%g", nu, x));
    }
  }
  return tally.outcome("Segura and Amos bounds on 64-point grids over [0.01, 40]; x R > 1 for nu in (0, 1/2), x >= 2");
}

Outcome w_phi_chain() {
  Tally tally;
  for (double nu : {0.1, 0.5, 1.0, 5.0}) {
    for (double x : geometric_grid({0.0, std::sqrt(2.0 * nu + 4.0), true, true}, 64)) {
      const auto c = w_phi_certificate(nu, x);
      const double lhs = x * x * q_prime(nu, x);
      tally.require(lhs < c.w && c.w < c.phi && c.phi < 0.0,
                    format("nu=%g x=%g: x^2 Q'=%.6g w=%.6g phi=%.6g", nu, x, lhs, c.w, c.phi));
    }
  }
  return tally.outcome("x^2 Q' < w < phi < 0 for nu in {0.1, 0.5, 1, 5}");
}

Outcome riccati_residuals() {
  Tally tally;
  for (double nu : {-0.75, -0.5, 0.0, 1.0, 2.7}) {
    for (double x : geometric_grid({0.05, 39.9, false, false}, 32)) {
      const double h = 1e-5 * x;
      const auto lo = ratio_state(nu, x - h);
      const auto mid = ratio_state(nu, x);
      const auto hi = ratio_state(nu, x + h);
      const double du = (hi.R - lo.R) / (2.0 * h);
      const double dv = (hi.Q - lo.Q) / (2.0 * h);
      const double u = mid.R;
      const double v = mid.Q;
      const double ru = std::abs(du - (1.0 - u * u - (2.0 * nu + 1.0) * u / x));
      const double rv =
          std::abs(dv - (1.0 - v * v - (2.0 * nu - 1.0) * v / x + (2.0 * nu - 1.0) / (x * x)));
      const double rq = std::abs(dv - q_prime(nu, x));
      tally.worst(std::max({ru, rv, rq}));
      tally.require(ru <= 1e-6, format("R residual nu=%g x=%g: %.3g", nu, x, ru));
      tally.require(rv <= 1e-6, format("Q residual nu=%g x=%g: %.3g", nu, x, rv));
      tally.require(rq <= 1e-6, format("q_prime vs difference nu=%g x=%g: %.3g", nu, x, rq));
    }
  }
  return tally.outcome(format("R, Q and q_prime against centred differences, worst %.3g", tally.worst()));
}

Outcome mittag_leffler() {
  Tally tally;
  int samples = 0;
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    const double j1 = bessel_zero(nu, 1).value;
    for (double fraction : {0.3, 0.8}) {
      const auto m = ratio_J(nu, fraction * j1, 50);
      const double gap = std::abs(m.direct - m.partial_sum);
      ++samples;
      tally.require(gap <= m.tail_estimate,
                    format("nu=%g x=%g gap %.3g tail %.3g", nu, fraction * j1, gap, m.tail_estimate));
    }
  }
  return tally.outcome(format("%d points, 50 terms, partial sum within the tail estimate", samples));
}

Outcome remark_2() {
  Tally tally;
  std::string values;
  for (double nu : {-0.9, -0.75, -0.6}) {
    const auto cp = find_z_nu(nu);
    tally.require(cp.value >= cp.lower_witness, format("z_nu(%g) = %g below j_{nu,1}", nu, cp.value));
    const auto report = scan_concavity(Target::I, nu, {0.0, kMaxArgument, true, false}, 128);
    tally.require(report.sign_changes.size() == 1, format("nu=%g: %zu sign changes", nu, report.sign_changes.size()));
    if (report.sign_changes.size() == 1) {
      const auto& b = report.sign_changes.front();
      tally.require(b.lo <= cp.value && cp.value <= b.hi, format("nu=%g: sign change away from z_nu", nu));
    }
    for (const auto& p : report.grid) {
      if (p.x < 0.95 * cp.value) {
        tally.require(certified(p.d2, Sign::Positive), format("nu=%g x=%g d2=%.3g not convex", nu, p.x, p.d2));
      } else if (p.x > 1.05 * cp.value) {
        tally.require(certified(p.d2, Sign::Negative), format("nu=%g x=%g d2=%.3g not concave", nu, p.x, p.d2));
      }
    }
    values += format("%s%g:%.6f>=%.6f", values.empty() ? "" : ", ", nu, cp.value, cp.lower_witness);
  }
  return tally.outcome("I-kernel log-convex then log-concave; z_nu >= j_{nu,1}: {" + values + "}");
}

Outcome corput_suite(const SuiteOptions& options) {
  Tally tally;
  int certificates = 0;
  for (CorputFamily family : kAllCorputFamilies) {
    const auto name = std::string(to_string(family));
    const auto batch = random_certificates(family, std::nullopt, options.pairs, options.seed);
    for (const auto& c : batch) {
      ++certificates;
      tally.require(c.domain_ok && c.holds.value_or(false),
                    format("%s nu=%g a=%g b=%g margin %.3g", name.c_str(), c.nu_or_alpha, c.a, c.b, c.margin));
    }
    // degenerate pairs a = b
    UnitSampler sampler(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (const auto& c : batch) {
      if (sampler.next() >= 0.02) continue;
      const auto d = corput_check(family, c.nu_or_alpha, c.a, c.a);
      tally.require(d.margin == 0.0 && d.lhs == 0.0 && d.rhs == 0.0 && d.holds.value_or(false),
                    format("%s a=b=%g margin %.3g", name.c_str(), c.a, d.margin));
    }
    // scaled forms against the primary form at the same (nu, a, b)
    if (family == CorputFamily::IScaled || family == CorputFamily::JScaled) {
      for (const auto& c : batch) {
        const CorputFamily primary = family == CorputFamily::JScaled ? CorputFamily::J
                                     : c.nu_or_alpha <= -0.5         ? CorputFamily::IGlobal
                                                                     : CorputFamily::ILocal;
        const auto p = corput_check(primary, c.nu_or_alpha, c.a, c.b);
        tally.require(p.holds == c.holds, format("%s verdict differs at a=%g b=%g", name.c_str(), c.a, c.b));
        tally.require(c.equivalence_gap.value_or(1.0) <= 1e-10,
                      format("%s margin gap %.3g at a=%g b=%g", name.c_str(), c.equivalence_gap.value_or(1.0), c.a,
                             c.b));
      }
    }
  }
  return tally.outcome(format("%d certificates over %zu families (seed %llu)", certificates,
                              std::size(kAllCorputFamilies), static_cast<unsigned long long>(options.seed)));
}

Outcome remark_3() {
  Tally tally;
  int reversed = 0;
  int pairs = 0;
  constexpr int kNodes = 16;
  for (int i = 1; i <= kNodes; ++i) {
    for (int k = i + 1; k <= kNodes; ++k) {
      const double a = i * std::numbers::pi / (kNodes + 1);
      const double b = k * std::numbers::pi / (kNodes + 1);
      const auto chain = hh_chain_check(ChainTarget::MinusJ, -0.5, a, b);
      ++pairs;
      if (!chain.midpoint_link()) ++reversed;
      tally.require(!chain.midpoint_link(),
                    format("a=%g b=%g mean %.6g >= midpoint %.6g", a, b, chain.mean_value, chain.midpoint_value));
      tally.require(chain.geometric_link(),
                    format("a=%g b=%g mean %.6g < geo %.6g", a, b, chain.mean_value, chain.geo_mean));
      tally.require(corput_check(CorputFamily::Trig, -0.5, a, b).holds.value_or(false),
                    format("cos form fails at a=%g b=%g", a, b));
    }
  }
  return tally.outcome(format("%d/%d pairs with midpoint > mean; mean >= geometric mean on all", reversed, pairs));
}

struct Check {
  int criterion;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> body;
};

}  // namespace

std::vector<CheckResult> run_suite(const SuiteOptions& options) {
  const std::vector<Check> checks = {
      {1, "closed-form-oracles", 1.0, closed_form_oracles},
      {2, "pinned-zero-j-3/2-1", 1.0, pinned_zero},
      {3, "ode-residual", 0.0, ode_residual},
      {4, "i-prime-log-concave-global", 5.0, theorem_1a},
      {5, "i-prime-log-concave-local-and-x-nu", 0.0, theorem_1bc},
      {5, "sub-interval-log-concavity-and-convexity", 0.0, remark_1},
      {6, "minus-j-prime-log-concave", 0.0, theorem_2},
      {7, "minus-k-prime-log-concave", 0.0, theorem_3},
      {8, "segura-amos-bounds", 0.0, ratio_bounds},
      {8, "w-phi-chain", 0.0, w_phi_chain},
      {8, "riccati-residuals", 0.0, riccati_residuals},
      {8, "mittag-leffler-j-ratio", 0.0, mittag_leffler},
      {9, "i-log-convex-then-concave-z-nu", 0.0, remark_2},
      {10, "van-der-corput-inequalities", 30.0, [&options] { return corput_suite(options); }},
      {11, "hermite-hadamard-reversal-cos", 0.0, remark_3},
  };

  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    CheckResult r;
    r.criterion = check.criterion;
    r.name = check.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = check.body();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.time_limit > 0.0 && r.seconds >= check.time_limit) {
      r.passed = false;
      r.detail += format(" (took %.2f s, limit %.0f s)", r.seconds, check.time_limit);
    }
    results.push_back(std::move(r));
  }

  CheckResult summary;
  summary.criterion = 12;
  summary.name = "suite-exit-status";
  summary.passed = all_passed(results);
  summary.detail = summary.passed ? "all checks above passed" : "some checks above failed";
  results.push_back(std::move(summary));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace besselcert
