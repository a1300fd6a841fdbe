#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "besselcert/corput.hpp"
#include "besselcert/errors.hpp"
#include "besselcert/zeros.hpp"

namespace besselcert {
namespace {

double order_for(CorputFamily family) {
  if (const auto fixed = fixed_order(family)) return *fixed;
  switch (family) {
    case CorputFamily::IGlobal: return -0.75;
    case CorputFamily::K: return 2.5;
    case CorputFamily::Gamma: return 3.0;
    default: return 1.0;
  }
}

TEST(CorputFamilyTest, NamesRoundTrip) {
  for (CorputFamily f : kAllCorputFamilies) EXPECT_EQ(parse_corput_family(to_string(f)), f);
  EXPECT_THROW(parse_corput_family("sine"), DomainError);
  EXPECT_EQ(fixed_order(CorputFamily::Hyperbolic), -0.5);
  EXPECT_EQ(fixed_order(CorputFamily::JSpecial), 0.5);
  EXPECT_EQ(fixed_order(CorputFamily::KSpecial), 1.5);
  EXPECT_FALSE(fixed_order(CorputFamily::J).has_value());
}

TEST(CorputTest, HyperbolicExample) {
  for (CorputFamily f : {CorputFamily::Hyperbolic, CorputFamily::IGlobal}) {
    const CorputCertificate c = corput_check(f, -0.5, 1.0, 2.0);
    EXPECT_TRUE(c.domain_ok);
    EXPECT_NEAR(c.lhs, std::cosh(2.0) - std::cosh(1.0), 1e-12);
    EXPECT_NEAR(c.rhs, std::sqrt(std::sinh(1.0) * std::sinh(2.0)), 1e-12);
    EXPECT_NEAR(c.margin, c.lhs - c.rhs, 1e-15);
    EXPECT_EQ(c.holds, true);
  }
}

TEST(CorputTest, TrigExample) {
  const CorputCertificate c = corput_check(CorputFamily::Trig, 0.0, 0.5, 2.5);
  EXPECT_NEAR(c.lhs, std::cos(0.5) - std::cos(2.5), 1e-12);
  EXPECT_NEAR(c.rhs, 2.0 * std::sqrt(std::sin(0.5) * std::sin(2.5)), 1e-12);
  EXPECT_EQ(c.holds, true);
}

TEST(CorputTest, KThreeHalvesDisplay) {
  for (auto [a, b] : {std::pair{0.0, 1.0}, {0.5, 3.0}, {2.0, 30.0}}) {
    const CorputCertificate c = corput_check(CorputFamily::KSpecial, 1.5, a, b);
    EXPECT_NEAR(c.lhs, std::abs((a + 1) * std::exp(-a) - (b + 1) * std::exp(-b)), 1e-12) << a << " " << b;
    EXPECT_NEAR(c.rhs, std::abs(a - b) * std::sqrt(a * b) * std::exp(-(a + b) / 2), 1e-12) << a << " " << b;
    EXPECT_EQ(c.holds, true);
  }
}

TEST(CorputTest, JSpecialDisplay) {
  const double a = 1.0;
  const double b = 4.0;
  const CorputCertificate c = corput_check(CorputFamily::JSpecial, 0.5, a, b);
  const double lhs = std::abs(b * std::sin(a) - a * std::sin(b));
  const double rhs = std::abs(a - b) * std::sqrt((a * std::cos(a) - std::sin(a)) * (b * std::cos(b) - std::sin(b)));
  EXPECT_NEAR(c.lhs, lhs, 1e-12);
  EXPECT_NEAR(c.rhs, rhs, 1e-12);
  EXPECT_EQ(c.holds, true);
}

TEST(CorputTest, ISpecialDisplay) {
  const double a = 0.5;
  const double b = 2.5;
  const CorputCertificate c = corput_check(CorputFamily::ISpecial, 0.5, a, b);
  const double lhs = std::abs(b * std::sinh(a) - a * std::sinh(b));
  const double rhs =
      std::abs(a - b) * std::sqrt((a * std::cosh(a) - std::sinh(a)) * (b * std::cosh(b) - std::sinh(b)));
  EXPECT_NEAR(c.lhs, lhs, 1e-12 * lhs);
  EXPECT_NEAR(c.rhs, rhs, 1e-12 * rhs);
  EXPECT_EQ(c.holds, true);
}

TEST(CorputTest, DegeneratePairsHaveZeroMargin) {
  for (CorputFamily f : kAllCorputFamilies) {
    const CorputCertificate c = corput_check(f, order_for(f), 1.0, 1.0);
    EXPECT_TRUE(c.domain_ok) << to_string(f);
    EXPECT_EQ(c.lhs, 0.0) << to_string(f);
    EXPECT_EQ(c.rhs, 0.0) << to_string(f);
    EXPECT_EQ(c.margin, 0.0) << to_string(f);
    EXPECT_EQ(c.holds, true) << to_string(f);
  }
}

TEST(CorputTest, SwapSymmetry) {
  for (CorputFamily f : kAllCorputFamilies) {
    const CorputCertificate ab = corput_check(f, order_for(f), 0.4, 1.3);
    const CorputCertificate ba = corput_check(f, order_for(f), 1.3, 0.4);
    EXPECT_EQ(ab.lhs, ba.lhs) << to_string(f);
    EXPECT_EQ(ab.rhs, ba.rhs) << to_string(f);
    EXPECT_EQ(ab.holds, ba.holds) << to_string(f);
  }
}

TEST(CorputTest, MarginCollapsesQuadratically) {
  for (CorputFamily f : {CorputFamily::IGlobal, CorputFamily::ILocal, CorputFamily::J, CorputFamily::K}) {
    const double nu = order_for(f);
    double previous_eps = 0.0;
    double previous_margin = 0.0;
    for (double eps : {1e-1, 5e-2, 2.5e-2, 1.25e-2}) {
      const double margin = corput_check(f, nu, 1.0, 1.0 + eps).margin;
      EXPECT_GT(margin, 0.0) << to_string(f);
      if (previous_margin > 0.0) {
        const double order = std::log(previous_margin / margin) / std::log(previous_eps / eps);
        EXPECT_GE(order, 1.9) << to_string(f) << " eps=" << eps;
      }
      previous_eps = eps;
      previous_margin = margin;
    }
  }
}

TEST(CorputTest, ScaledFormsAgreeWithPrimaryForms) {
  for (double nu : {-0.9, -0.5, 0.0, 1.0, 4.0}) {
    for (auto [a, b] : {std::pair{0.1, 0.7}, {0.5, 2.0}, {1.0, 1.9}}) {
      const CorputCertificate ps = corput_check(CorputFamily::ILocal, nu, a, b);
      const CorputCertificate ss = corput_check(CorputFamily::IScaled, nu, a, b);
      ASSERT_TRUE(ss.equivalence_gap.has_value());
      EXPECT_LT(*ss.equivalence_gap, 1e-12) << nu << " " << a << " " << b;
      EXPECT_EQ(ps.holds, ss.holds);
      EXPECT_NEAR(ss.margin, 2 * (nu + 1) * ps.margin, 1e-12 * (1 + ss.lhs));

      const CorputCertificate pj = corput_check(CorputFamily::J, nu, a, b);
      const CorputCertificate sj = corput_check(CorputFamily::JScaled, nu, a, b);
      ASSERT_TRUE(sj.equivalence_gap.has_value());
      EXPECT_LT(*sj.equivalence_gap, 1e-12) << nu << " " << a << " " << b;
      EXPECT_EQ(pj.holds, sj.holds);
    }
  }
}

TEST(CorputTest, OutsideDomainRefusesVerdict) {
  const double j = bessel_zero(2.0, 1).value;
  const CorputCertificate c = corput_check(CorputFamily::J, 1.0, 1.0, j + 0.1);
  EXPECT_FALSE(c.domain_ok);
  EXPECT_FALSE(c.holds.has_value());
  EXPECT_FALSE(corput_check(CorputFamily::ILocal, 1.0, 1.0, std::sqrt(8.0)).domain_ok);
  EXPECT_FALSE(corput_check(CorputFamily::IGlobal, -0.25, 1.0, 2.0).domain_ok);
  EXPECT_FALSE(corput_check(CorputFamily::K, 1.0, 1.0, 2.0).domain_ok);
  EXPECT_FALSE(corput_check(CorputFamily::Trig, 0.0, 1.0, 3.5).domain_ok);
  EXPECT_FALSE(corput_check(CorputFamily::ISpecial, 0.5, 1.0, std::sqrt(7.0)).domain_ok);
  EXPECT_FALSE(corput_check(CorputFamily::Gamma, 0.5, 1.0, 2.0).domain_ok);
}

TEST(CorputTest, ToleranceRule) {
  EXPECT_TRUE(within_tolerance(1.0, 0.0));
  EXPECT_TRUE(within_tolerance(1.0, -1.9e-12));
  EXPECT_FALSE(within_tolerance(1.0, -2.1e-12));
  EXPECT_TRUE(within_tolerance(0.0, -0.9e-12));
}

TEST(CorputTest, RandomizedSoundness) {
  for (CorputFamily f : kAllCorputFamilies) {
    const std::vector<CorputCertificate> certs = random_certificates(f, std::nullopt, 1000, 2024);
    ASSERT_EQ(certs.size(), 1000u);
    int failures = 0;
    for (const CorputCertificate& c : certs) {
      EXPECT_TRUE(c.domain_ok) << to_string(f) << " a=" << c.a << " b=" << c.b;
      if (c.holds != true) ++failures;
      if (c.equivalence_gap) {
        EXPECT_LT(*c.equivalence_gap, 1e-10) << to_string(f);
      }
    }
    EXPECT_EQ(failures, 0) << to_string(f);
  }
}

TEST(CorputTest, RandomCertificatesAreDeterministicAndSorted) {
  const auto first = random_certificates(CorputFamily::J, std::nullopt, 200, 7);
  const auto second = random_certificates(CorputFamily::J, std::nullopt, 200, 7);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].a, second[i].a);
    EXPECT_EQ(first[i].b, second[i].b);
    EXPECT_EQ(first[i].nu_or_alpha, second[i].nu_or_alpha);
    EXPECT_EQ(first[i].margin, second[i].margin);
    if (i > 0) {
      EXPECT_LE(first[i - 1].a, first[i].a);
    }
  }
  const auto other = random_certificates(CorputFamily::J, std::nullopt, 200, 8);
  EXPECT_NE(first.front().a, other.front().a);
}

TEST(CorputTest, FixedOrderSampling) {
  for (const CorputCertificate& c : random_certificates(CorputFamily::K, 1.5, 100, 7)) {
    EXPECT_EQ(c.nu_or_alpha, 1.5);
    EXPECT_EQ(c.holds, true);
  }
  EXPECT_THROW(random_certificates(CorputFamily::K, 1.0, 10, 7), DomainError);
  EXPECT_THROW(random_certificates(CorputFamily::K, 1.5, -1, 7), DomainError);
}

TEST(NormalTest, Values) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_pdf(0.0), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(normal_pdf(0.0), 0.3989423, 1e-7);
  for (double x : {0.5, 1.0, 3.0}) EXPECT_NEAR(normal_cdf(x) + normal_cdf(-x), 1.0, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(normal_cdf(-5.0), 2.866515718791939e-07, 1e-20);
}

TEST(IncompleteGammaTest, Values) {
  for (double x : {0.0, 0.3, 1.0, 7.0, 30.0}) EXPECT_NEAR(lower_incomplete_gamma(1.0, x), 1 - std::exp(-x), 1e-15);
  EXPECT_EQ(lower_incomplete_gamma(4.5, 0.0), 0.0);
  EXPECT_NEAR(lower_incomplete_gamma(2.0, 1.0), 1 - 2 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(lower_incomplete_gamma(2.0, 1.0), 0.264241, 1e-6);
  // gamma(3, x) = 2 - e^{-x}(x^2 + 2x + 2)
  for (double x : {0.5, 4.0, 12.0}) {
    const double expected = 2 - std::exp(-x) * (x * x + 2 * x + 2);
    EXPECT_NEAR(lower_incomplete_gamma(3.0, x), expected, 1e-10 * expected);
  }
  double previous = 0.0;
  for (double x = 0.5; x <= 40.0; x += 0.5) {
    const double g = lower_incomplete_gamma(10.0, x);
    EXPECT_GT(g, previous);
    EXPECT_LE(g / std::tgamma(10.0), 1.0);
    previous = g;
  }
  EXPECT_THROW(lower_incomplete_gamma(0.5, 1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(51.0, 1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(2.0, -1.0), DomainError);
  EXPECT_THROW(lower_incomplete_gamma(2.0, 41.0), DomainError);
}

TEST(ProbabilityTest, Examples) {
  EXPECT_EQ(corput_prob({DistKind::StandardNormal}, -1.0, 2.0).holds, true);
  EXPECT_EQ(corput_prob({DistKind::StandardNormal}, 0.7, 0.7).margin, 0.0);
  for (auto [a, b] : {std::pair{0.0, 1.0}, {0.5, 4.0}, {3.0, 20.0}}) {
    const CorputCertificate c = corput_prob({DistKind::Gamma, 1.0}, a, b);
    EXPECT_NEAR(c.lhs, std::abs(std::exp(-b) - std::exp(-a)), 1e-15);
    EXPECT_NEAR(c.rhs, std::abs(a - b) * std::exp(-(a + b) / 2), 1e-15);
    EXPECT_EQ(c.holds, true);
  }
  const CorputCertificate c = corput_check(CorputFamily::Gamma, 2.0, 1.0, 3.0);
  EXPECT_EQ(c.holds, true);
  EXPECT_NEAR(c.rhs, 2.0 * std::sqrt(3.0) * std::exp(-2.0), 1e-14);
  EXPECT_THROW(corput_prob({DistKind::Gamma, 0.5}, 1.0, 2.0), DomainError);
  EXPECT_THROW(corput_prob({DistKind::Gamma, 2.0}, -1.0, 2.0), DomainError);
}

TEST(ChainTest, FullOrderingForI) {
  const HermiteHadamardChain c = hh_chain_check(ChainTarget::I, -0.75, 0.5, 2.0);
  EXPECT_GE(c.mean_value, c.midpoint_value);
  EXPECT_GE(c.midpoint_value, c.geo_mean);
  EXPECT_TRUE(c.midpoint_link());
  EXPECT_TRUE(c.geometric_link());
}

TEST(ChainTest, MidpointLinkReversesForCosine) {
  // -J_{-1/2} = -cos has derivative sin, concave on (0, pi).
  int pairs = 0;
  for (double a = 0.2; a < 3.0; a += 0.4) {
    for (double b = a + 0.1; b < 3.1; b += 0.4) {
      const HermiteHadamardChain c = hh_chain_check(ChainTarget::MinusJ, -0.5, a, b);
      EXPECT_NEAR(c.mean_value, (std::cos(a) - std::cos(b)) / (b - a), 1e-12);
      EXPECT_NEAR(c.midpoint_value, std::sin((a + b) / 2), 1e-12);
      EXPECT_GT(c.midpoint_value, c.mean_value);
      EXPECT_FALSE(c.midpoint_link());
      EXPECT_TRUE(c.geometric_link());
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 20);
}

TEST(ChainTest, CollapsesToDerivative) {
  const double derivative = std::sinh(1.0);
  const HermiteHadamardChain c = hh_chain_check(ChainTarget::I, -0.5, 1.0, 1.0 + 1e-6);
  EXPECT_NEAR(c.mean_value, derivative, 1e-5);
  EXPECT_NEAR(c.midpoint_value, derivative, 1e-5);
  EXPECT_NEAR(c.geo_mean, derivative, 1e-5);
  EXPECT_THROW(hh_chain_check(ChainTarget::I, -0.5, 1.0, 1.0), DomainError);
}

TEST(ChainTest, MinusKGeometricLink) {
  const HermiteHadamardChain c = hh_chain_check(ChainTarget::MinusK, 1.5, 0.5, 3.0);
  EXPECT_TRUE(c.geometric_link());
}

}  // namespace
}  // namespace besselcert
