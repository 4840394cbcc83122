#pragma once

// Universal rate bounds for the representation laws.
//
// The governing quantity is g1(n) - 1 = e(1 - 1/n)^{n-1} - 1, which equals
// exp(S_n) - 1 for the series S_n = sum_{k>=1} 1/(k(k+1)n^k). Comparing S_n
// with an integral gives S_n <= 1/(2n) + 1/(n^2 log n), and since this
// majorant is decreasing in n, exp(u) - 1 <= u e^u <= C0 u with
// C0 = exp(majorant at n = 2).

#include <cmath>
#include <cstdint>

#include "evrate/numerics.hpp"

namespace evrate {

/// Published six-decimal value of the Lemma constant. Kept for reporting;
/// the bounds use c0() below.
inline constexpr double kPublishedC0 = 1.841673;

/// 1/(2n) + 1/(n^2 ln n).
inline double f2_bound(std::int64_t n) {
  detail::require_sample_size(n, "f2_bound");
  const double nd = static_cast<double>(n);
  return 0.5 / nd + 1.0 / (nd * nd * std::log(nd));
}

/// exp(f2_bound(2)) at full precision.
inline double c0() {
  static const double value = std::exp(f2_bound(2));
  return value;
}

/// log g1(n) = 1 + (n - 1) log(1 - 1/n), computed without cancellation.
inline double log_g1(std::int64_t n) {
  detail::require_sample_size(n, "g1");
  return crossing_function(static_cast<double>(n), 1.0);
}

/// e (1 - 1/n)^{n-1}; strictly greater than 1 and decreasing to 1.
inline double g1(std::int64_t n) { return std::exp(log_g1(n)); }

/// g1(n) - 1 without the subtraction.
inline double g1_minus_1(std::int64_t n) { return std::expm1(log_g1(n)); }

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int terms = 0;
};

/// Truncated sum_{k>=1} 1/(k(k+1) n^k). K is the first index whose geometric
/// tail bound 1/((K+1)(K+2) n^K (n-1)) drops to rel_tol times the partial
/// sum; terms are then accumulated smallest first.
inline SeriesValue lemma_series(std::int64_t n, double rel_tol = 1e-16) {
  detail::require_sample_size(n, "lemma_series");
  if (!(rel_tol >= 1e-16)) rel_tol = 1e-16;
  const double nd = static_cast<double>(n);

  SeriesValue out;
  double inv_pow = 1.0;  // n^{-K}
  double partial = 0.0;
  int k = 0;
  double tail = 0.0;
  do {
    ++k;
    inv_pow /= nd;
    partial += inv_pow / (static_cast<double>(k) * (k + 1));
    tail = inv_pow / ((k + 1.0) * (k + 2.0) * (nd - 1.0));
  } while (tail > rel_tol * partial && k < 4000);

  double sum = 0.0;
  for (int j = k; j >= 1; --j) {
    sum += std::pow(nd, -j) / (static_cast<double>(j) * (j + 1));
  }
  out.value = sum;
  out.tail_bound = tail;
  out.terms = k;
  return out;
}

/// C0 * f2_bound(n): the upper bound on g1(n) - 1.
inline double lemma_bound(std::int64_t n) { return c0() * f2_bound(n); }

/// (2 + C0)/(4n) + C0/(2 n^2 ln n): the uniform Kolmogorov-distance bound.
inline double theorem_bound(std::int64_t n) {
  detail::require_sample_size(n, "theorem_bound");
  const double nd = static_cast<double>(n);
  const double c = c0();
  return (2.0 + c) / (4.0 * nd) + c / (2.0 * nd * nd * std::log(nd));
}

struct BoundBreakdown {
  std::int64_t n = 0;
  double g1 = 0.0;
  double g1_minus_1 = 0.0;
  SeriesValue series;
  double f2_value = 0.0;
  double c0 = 0.0;
  double lemma_bound = 0.0;
  double theorem_bound = 0.0;

  bool f1_holds = false;     // |g1 - exp(series)| <= 1e-12 g1
  bool f2_holds = false;     // series <= f2_value; false for every n >= 401
  bool lemma_holds = false;  // 0 <= g1 - 1 <= lemma_bound
  bool theta_holds = false;  // expm1(u) <= u e^u <= C0 u at u = f2_value

  [[nodiscard]] bool all_hold() const { return certified() && f2_holds; }
  // The lemma inequality is checked directly, so the series comparison is not needed for it.
  [[nodiscard]] bool certified() const { return f1_holds && lemma_holds && theta_holds; }
};

inline BoundBreakdown bound_breakdown(std::int64_t n) {
  BoundBreakdown b;
  b.n = n;
  b.g1 = g1(n);
  b.g1_minus_1 = g1_minus_1(n);
  b.series = lemma_series(n);
  b.f2_value = f2_bound(n);
  b.c0 = c0();
  b.lemma_bound = lemma_bound(n);
  b.theorem_bound = theorem_bound(n);

  b.f1_holds = std::abs(b.g1 - std::exp(b.series.value)) <= 1e-12 * b.g1;
  b.f2_holds = b.series.value <= b.f2_value;
  b.lemma_holds = b.g1_minus_1 >= 0.0 && b.g1_minus_1 <= b.lemma_bound;
  const double u = b.f2_value;
  b.theta_holds = std::expm1(u) <= u * std::exp(u) && u * std::exp(u) <= b.c0 * u;
  return b;
}

}  // namespace evrate
