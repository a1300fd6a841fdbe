#pragma once

// Power-series engine shared by the kernel evaluators. The same template runs
// in double (I-kernel, all terms positive), double-double (J-kernel, alternating)
// and a 64-digit binary float (K via the I_{-nu}, I_nu reflection combination).

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "besselcert/detail/double_double.hpp"

namespace besselcert::detail {

using WideReal =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<64>, boost::multiprecision::et_off>;

inline double to_double(double v) { return v; }
inline double to_double(const DoubleDouble& v) { return static_cast<double>(v); }
inline double to_double(const WideReal& v) { return v.convert_to<double>(); }

template <class Real>
constexpr double unit_roundoff() {
  return std::numeric_limits<double>::epsilon() / 2;
}
template <>
constexpr double unit_roundoff<DoubleDouble>() {
  return DoubleDouble::epsilon();
}
template <>
inline double unit_roundoff<WideReal>() {
  return std::numeric_limits<WideReal>::epsilon().convert_to<double>();
}

inline constexpr int kMaxSeriesTerms = 200;
inline constexpr double kRelativeCutoff = 1e-17;

template <class Real>
struct SeriesSum {
  Real sum{};
  double abs_sum = 0.0;     // sum of |t_n| actually added
  double tail_bound = 0.0;  // bound on |sum of neglected terms|
  int terms = 0;

  /// Truncation plus accumulated rounding, absolute.
  double error_bound() const { return tail_bound + (4.0 * terms + 4.0) * unit_roundoff<Real>() * abs_sum; }
};

/// 0F1(; b; z) = sum_n z^n / ((b)_n n!), summed until the next term drops below
/// cutoff * |partial sum| (in the decreasing regime) or kMaxSeriesTerms terms.
/// b must not be zero or a negative integer.
template <class Real>
SeriesSum<Real> hypergeometric_0f1(const Real& b, const Real& z, double cutoff = kRelativeCutoff) {
  using std::abs;
  const double b_approx = to_double(b);
  const double z_abs = std::abs(to_double(z));

  SeriesSum<Real> out;
  Real term(1);
  out.sum = Real(1);
  out.abs_sum = 1.0;
  int n = 0;
  for (;;) {
    const Real next = term * z / ((b + Real(n)) * Real(n + 1));
    const double next_abs = std::abs(to_double(next));
    // ratio bound for every term after `next`; valid once b + n + 1 > 0
    const double later_ratio = z_abs / ((b_approx + n + 1) * (n + 2));
    const bool decreasing = b_approx + n + 1 > 0 && later_ratio < 1.0;
    if (decreasing && next_abs <= cutoff * std::abs(to_double(out.sum))) {
      out.tail_bound = next_abs / (1.0 - later_ratio);
      break;
    }
    if (n + 1 >= kMaxSeriesTerms) {
      out.tail_bound = decreasing ? next_abs / (1.0 - later_ratio) : std::numeric_limits<double>::infinity();
      break;
    }
    term = next;
    out.sum += term;
    out.abs_sum += next_abs;
    ++n;
  }
  out.terms = n + 1;
  return out;
}

}  // namespace besselcert::detail
