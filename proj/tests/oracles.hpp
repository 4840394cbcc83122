#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's stable kernels: the crossing point comes from plain long double
// bisection on the naive formula, and the frozen constants were evaluated
// at 40 digits with mpmath (findroot on y + (n-1) log(1 - y/n)).

#include <cmath>
#include <cstdint>

namespace evrate::testing {

/// Bisection on y + (n - 1) log(1 - y/n) over [1, n), 300 halvings.
inline long double naive_crossing(std::int64_t n) {
  const long double nd = static_cast<long double>(n);
  auto h = [nd](long double y) { return y + (nd - 1.0L) * std::log(1.0L - y / nd); };
  long double lo = 1.0L;
  long double hi = nd * (1.0L - 1e-18L);
  for (int i = 0; i < 300; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (h(mid) > 0.0L ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

/// e^{-y} - (1 - y/n)^n at the naive crossing.
inline long double naive_ks(std::int64_t n) {
  const long double y = naive_crossing(n);
  const long double nd = static_cast<long double>(n);
  return std::exp(-y) - std::pow(1.0L - y / nd, nd);
}

// mpmath, 40 digits.
inline constexpr double kCrossingN2 = 1.5936242600400400923;
inline constexpr double kKsN2 = 0.16190255947297871491;
inline constexpr double kCrossingN10 = 1.9310016714419663605;
inline constexpr double kCrossingN1e4 = 1.9999333311110074019750;
inline constexpr double kKsN10 = 0.028000080455330762145;
inline constexpr double kKsN1e4 = 0.000027067958912619358322;
inline constexpr double kKsN1e6 = 0.00000027067065669677761604;
inline constexpr double kC0 = 1.8416718260782605125;
inline constexpr double kF2AtTwo = 0.61067376022224085184;
inline constexpr double kTheoremBoundN2 = 0.81233032956328605844;
inline constexpr double kLemmaBoundN2 = 1.1246606591265721169;

}  // namespace evrate::testing
