#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace evrate {

/// Raised when an iterative routine cannot reach its requested accuracy.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_sample_size(std::int64_t n, const char* where) {
  if (n < 2) {
    throw std::domain_error(std::string(where) + ": sample size n must be >= 2, got " +
                            std::to_string(n));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stable kernels for (1 - t/n)^n against e^{-t}.
// ---------------------------------------------------------------------------

/// -log1p(-u) - u = sum_{k>=2} u^k / k, for u in [0, 1].
///
/// The direct difference loses every significant digit once u is below
/// sqrt(eps), which is exactly the regime t/n of interest at large n.
inline double log1p_excess(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return std::numeric_limits<double>::infinity();
  if (u >= 0.5) return -std::log1p(-u) - u;
  double term = u * u;  // u^k
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    const double add = term / k;
    sum += add;
    if (add <= sum * 1e-18) break;
    term *= u;
  }
  return sum;
}

/// n * log1p(-t/n) + t, i.e. the log of (1 - t/n)^n / e^{-t}. Always <= 0.
inline double survival_log_excess(double n, double t) {
  return -n * log1p_excess(t / n);
}

/// (1 - t/n)^n for 0 <= t < n, zero for t >= n: the survival function of
/// n times the minimum of n uniforms.
inline double unit_rep_survival(double n, double t) {
  if (t <= 0.0) return 1.0;
  if (t >= n) return 0.0;
  return std::exp(n * std::log1p(-t / n));
}

/// e^{-t} - (1 - t/n)^n [t < n], always >= 0.
inline double unit_survival_gap(double n, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= n) return std::exp(-t);
  return std::exp(-t) * -std::expm1(survival_log_excess(n, t));
}

/// Log of the density ratio e^{t} (1 - t/n)^{n-1}; its unique positive root
/// past t = 1 is where the two densities cross.
inline double crossing_function(double n, double y) {
  const double u = y / n;
  return -std::log1p(-u) - n * log1p_excess(u);
}

/// Derivative of crossing_function in y.
inline double crossing_function_slope(double n, double y) { return (1.0 - y) / (n - y); }

// ---------------------------------------------------------------------------
// Bracketed root finding.
// ---------------------------------------------------------------------------

struct RootResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int bisections = 0;
  int newton_steps = 0;
};

/// Bisection on a sign-changing bracket until hi - lo <= width_tol, then up
/// to max_newton Newton steps from the midpoint. A Newton iterate that leaves
/// [lo, hi] is discarded and the bisection midpoint kept.
template <class F, class DF>
RootResult bisect_newton(F&& f, DF&& df, double lo, double hi, double width_tol,
                         int max_newton = 5, int max_bisections = 400) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi <= 0.0)) {
    std::ostringstream os;
    os << "bisect_newton: root not bracketed on [" << lo << ", " << hi << "], f(lo)=" << flo
       << ", f(hi)=" << fhi;
    throw numerical_error(os.str());
  }
  RootResult r;
  while (hi - lo > width_tol && r.bisections < max_bisections) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    ++r.bisections;
  }
  r.lo = lo;
  r.hi = hi;
  double x = lo + 0.5 * (hi - lo);
  for (int i = 0; i < max_newton; ++i) {
    const double fx = f(x);
    const double d = df(x);
    if (fx == 0.0 || d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= lo && next <= hi)) break;
    ++r.newton_steps;
    if (next == x) break;
    x = next;
  }
  r.root = x;
  return r;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  int deepest = 0;
};

namespace detail {

template <class F>
struct SimpsonState {
  F& f;
  int max_depth;
  QuadratureResult result;
};

template <class F>
double simpson_recurse(SimpsonState<F>& s, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = s.f(lm);
  const double frm = s.f(rm);
  s.result.evaluations += 2;
  if (depth > s.result.deepest) s.result.deepest = depth;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || lm <= a || rm >= b) {
    s.result.error_estimate += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= s.max_depth) {
    std::ostringstream os;
    os.precision(17);
    os << "adaptive_simpson: depth limit " << s.max_depth << " reached on [" << a << ", " << b
       << "] with local error " << std::abs(delta) / 15.0 << " > tolerance " << tol << " after "
       << s.result.evaluations << " evaluations";
    throw numerical_error(os.str());
  }
  return simpson_recurse(s, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_recurse(s, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Integrates f over [a, b] to absolute tolerance tol. Throws numerical_error
/// with the offending subinterval when refinement passes max_depth.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 60) {
  QuadratureResult out;
  if (!(b > a)) return out;
  detail::SimpsonState<std::remove_reference_t<F>> s{f, max_depth, {}};
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  s.result.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  s.result.value = detail::simpson_recurse(s, a, b, fa, fm, fb, whole, tol, 1);
  return s.result;
}

}  // namespace evrate
