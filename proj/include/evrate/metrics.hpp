#pragma once

// Kolmogorov and total-variation distances between the representation law
// and its limit.
//
// In the reduced coordinate t the comparison is n U_{1,n} (density
// (1 - t/n)^{n-1} on [0, n)) against a unit exponential. The log density
// ratio h(t) = t + (n - 1) log(1 - t/n) rises from 0 to its maximum at t = 1
// and then falls to -inf, so the densities cross exactly once, at the root
// y* of h on [1, n). Both distances are attained there:
//
//   ks = tv = e^{-y*} - (1 - y*/n)^n = y* e^{-y*} / n.
//
// The oracles below recompute both quantities by brute force (grid scan and
// adaptive quadrature) without going through the closed form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "evrate/bounds.hpp"
#include "evrate/distributions.hpp"
#include "evrate/numerics.hpp"

namespace evrate {

/// sup of l(x) = x^{-alpha} e^{-x^{-alpha}} on (0, 1], attained at x = 1.
inline constexpr double kEllSupremum = 1.0 / std::numbers::e;

struct CrossingPoint {
  std::int64_t n = 0;
  double y_star = 0.0;         // root of h in [1, n)
  double residual = 0.0;       // |h(y_star)|
  double bracket_width = 0.0;  // final bisection bracket
  int bisections = 0;
  int newton_steps = 0;

  /// The crossing point in the coordinate of a given case, e.g.
  /// y*^{-gamma} for Frechet.
  [[nodiscard]] double in_original(const ExtremeCase& c) const { return expand_from_unit(c, y_star); }
};

inline constexpr double kCrossingWidthTol = 1e-13;

inline CrossingPoint crossing_point(std::int64_t n) {
  detail::require_sample_size(n, "crossing_point");
  const double nd = static_cast<double>(n);
  auto h = [nd](double y) { return crossing_function(nd, y); };
  auto dh = [nd](double y) { return crossing_function_slope(nd, y); };
  const double hi = std::nextafter(nd, 0.0);
  const RootResult r = bisect_newton(h, dh, 1.0, hi, kCrossingWidthTol);

  CrossingPoint cp;
  cp.n = n;
  cp.y_star = r.root;
  cp.residual = std::abs(h(r.root));
  cp.bracket_width = r.hi - r.lo;
  cp.bisections = r.bisections;
  cp.newton_steps = r.newton_steps;
  return cp;
}

struct ProofPieces {
  double mass_left = 0.0;       // limit mass below the finite-sample support, e^{-n}
  double a1 = 0.0;              // integral of (f - f_n) between support edge and crossing
  double a2 = 0.0;              // integral of (f_n - f) beyond the crossing
  double alpha_n3 = 0.0;        // g1(n) - 1
  double alpha_n3_tight = 0.0;  // (g1(n) - 1) (1 - F(crossing)), before dropping the factor
  double ell_sup = kEllSupremum;
};

struct DistanceResult {
  std::int64_t n = 0;
  double ks = 0.0;
  double tv = 0.0;
  CrossingPoint crossing;
  ProofPieces pieces;
};

inline DistanceResult ks_tv_exact(std::int64_t n) {
  detail::require_sample_size(n, "ks_tv_exact");
  const double nd = static_cast<double>(n);
  DistanceResult d;
  d.n = n;
  d.crossing = crossing_point(n);
  const double y = d.crossing.y_star;

  const double gap = std::exp(-y) * -std::expm1(survival_log_excess(nd, y));
  d.tv = gap;
  // Past t = n the gap is e^{-t} <= e^{-n}, never above the interior maximum.
  d.ks = std::max(gap, std::exp(-nd));

  ProofPieces& p = d.pieces;
  p.mass_left = std::exp(-nd);
  p.a1 = gap - p.mass_left;
  p.a2 = gap;
  p.alpha_n3 = g1_minus_1(n);
  p.alpha_n3_tight = p.alpha_n3 * -std::expm1(-y);
  return d;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

inline constexpr double kScanLowerT = 1e-6;
inline constexpr double kScanUpperSlack = 1e-6;

/// k-th point of the log-spaced reduced grid on [1e-6, n (1 + 1e-6)]. Grids
/// of sizes G and m (G - 1) + 1 are nested.
inline double reduced_scan_point(std::int64_t n, std::int64_t grid_size, std::int64_t k) {
  const double lo = std::log(kScanLowerT);
  const double hi = std::log(static_cast<double>(n) * (1.0 + kScanUpperSlack));
  const double frac = static_cast<double>(k) / static_cast<double>(grid_size - 1);
  return std::exp(lo + frac * (hi - lo));
}

namespace detail {

inline void require_grid(std::int64_t grid_size, const char* where) {
  if (grid_size < 2) {
    throw std::domain_error(std::string(where) + ": grid_size must be >= 2");
  }
}

}  // namespace detail

/// max over the reduced grid of |(1 - t/n)^n [t < n] - e^{-t}|, each CDF
/// evaluated separately. A lower bound on the Kolmogorov distance.
inline double ks_scan_oracle(std::int64_t n, std::int64_t grid_size) {
  detail::require_sample_size(n, "ks_scan_oracle");
  detail::require_grid(grid_size, "ks_scan_oracle");
  const double nd = static_cast<double>(n);
  double best = 0.0;
  for (std::int64_t k = 0; k < grid_size; ++k) {
    const double t = reduced_scan_point(n, grid_size, k);
    const double finite = t < nd ? std::exp(nd * std::log1p(-t / nd)) : 0.0;
    best = std::max(best, std::abs(finite - std::exp(-t)));
  }
  return best;
}

/// Same scan carried out on rep_cdf / limit_cdf in the case's own
/// coordinate, at the images x = expand_from_unit(case, t) of the reduced
/// grid.
inline double distance_in_original_coordinates(std::int64_t n, const ExtremeCase& c,
                                               std::int64_t grid_size) {
  detail::require_grid(grid_size, "distance_in_original_coordinates");
  const RepresentationLaw law(n, c);
  double best = 0.0;
  for (std::int64_t k = 0; k < grid_size; ++k) {
    const double x = expand_from_unit(c, reduced_scan_point(n, grid_size, k));
    best = std::max(best, std::abs(law.cdf(x) - limit_cdf(c, x)));
  }
  return best;
}

/// Half the integral of |f_n - f| by adaptive Simpson on [0, n], split at
/// the crossing and a few points beyond it, plus the exact tail e^{-n}.
/// Throws numerical_error if refinement does not converge.
inline double tv_quadrature_oracle(std::int64_t n, double tol = 1e-10) {
  detail::require_sample_size(n, "tv_quadrature_oracle");
  if (!(tol >= 1e-12)) throw std::domain_error("tv_quadrature_oracle: tol must be >= 1e-12");
  const double nd = static_cast<double>(n);
  const double y = crossing_point(n).y_star;

  auto integrand = [nd](double t) {
    const double finite = t < nd ? std::exp((nd - 1.0) * std::log1p(-t / nd)) : 0.0;
    return std::abs(finite - std::exp(-t));
  };

  std::vector<double> cuts{0.0};
  for (double c : {std::min(1.0, y), y, y + 4.0, y + 16.0, y + 64.0}) {
    if (c > cuts.back() && c < nd) cuts.push_back(c);
  }
  cuts.push_back(nd);

  const double piece_tol = tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], piece_tol).value;
  }
  return 0.5 * (total + std::exp(-nd));
}

/// Scans l(x) = x^{-alpha} e^{-x^{-alpha}} at x = k/points, k = 1..points.
inline double ell_scan_supremum(double alpha, std::int64_t points) {
  double best = 0.0;
  for (std::int64_t k = 1; k <= points; ++k) {
    const double s = std::pow(static_cast<double>(k) / static_cast<double>(points), -alpha);
    best = std::max(best, s * std::exp(-s));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Inequality chain
// ---------------------------------------------------------------------------

struct ChainStep {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool asserted = true;  // false: reported for diagnostics only
};

inline ChainStep make_step(std::string name, double lhs, double rhs, bool asserted = true) {
  return ChainStep{std::move(name), lhs, rhs, lhs <= rhs, asserted};
}

/// Every step from 2 tv down to the theorem bound, evaluated at the exact
/// crossing point:
///   decomposition  2 tv <= e^{-y*} y*/n + (g1 - 1)
///   ell_supremum   y* e^{-y*} <= 1/e
///   scheffe_rate   2 tv <= 1/n + (g1 - 1)
///   lemma          g1 - 1 <= lemma_bound
///   theorem        tv <= theorem_bound
/// plus the unasserted intermediate line tv <= 1/(2n) + C0 (1/(4n) + 2/(n^2 ln n)).
inline std::vector<ChainStep> bound_chain(const DistanceResult& d) {
  const double nd = static_cast<double>(d.n);
  const double y = d.crossing.y_star;
  const double a3 = d.pieces.alpha_n3;
  const double c = c0();
  std::vector<ChainStep> steps;
  steps.push_back(make_step("decomposition", 2.0 * d.tv, std::exp(-y) * (y / nd) + a3));
  steps.push_back(make_step("ell_supremum", y * std::exp(-y), kEllSupremum));
  steps.push_back(make_step("scheffe_rate", 2.0 * d.tv, 1.0 / nd + a3));
  steps.push_back(make_step("lemma", a3, lemma_bound(d.n)));
  steps.push_back(make_step("theorem", d.tv, theorem_bound(d.n)));
  steps.push_back(make_step("intermediate_display", d.tv,
                            0.5 / nd + c * (0.25 / nd + 2.0 / (nd * nd * std::log(nd))),
                            /*asserted=*/false));
  return steps;
}

inline std::vector<ChainStep> bound_chain(std::int64_t n) { return bound_chain(ks_tv_exact(n)); }

inline bool chain_holds(const std::vector<ChainStep>& steps) {
  return std::all_of(steps.begin(), steps.end(),
                     [](const ChainStep& s) { return !s.asserted || s.holds; });
}

}  // namespace evrate
