#pragma once

// Limit laws of normalized maxima and their finite-sample representations
//
//   Frechet  Z_n = (n U_{1,n})^{-gamma},   gamma > 0
//   Weibull  Z_n = -(n U_{1,n})^{-gamma},  gamma < 0
//   Gumbel   Z_n = -log(n U_{1,n})
//
// with U_{1,n} the minimum of n independent uniforms. Every law here is
// evaluated through the reduced coordinate t = reduce_to_unit(case, x), a
// strictly decreasing map under which the limit CDF is e^{-t} and the
// finite-sample CDF is (1 - t/n)^n on t < n. The Gumbel sign is the one that
// converges to exp(-e^{-x}); the Weibull limit is exp(-(-x)^{-1/gamma}) on
// x < 0.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "evrate/numerics.hpp"

namespace evrate {

enum class Family : int { gumbel = 0, frechet = 1, weibull = 2 };

/// One of the three extreme-value types together with its index gamma.
class ExtremeCase {
 public:
  static ExtremeCase frechet(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw std::domain_error("ExtremeCase::frechet: gamma must be finite and > 0, got " +
                              std::to_string(gamma));
    }
    return ExtremeCase(Family::frechet, gamma);
  }

  static ExtremeCase weibull(double gamma) {
    if (!(gamma < 0.0) || !std::isfinite(gamma)) {
      throw std::domain_error("ExtremeCase::weibull: gamma must be finite and < 0, got " +
                              std::to_string(gamma));
    }
    return ExtremeCase(Family::weibull, gamma);
  }

  static ExtremeCase gumbel() { return ExtremeCase(Family::gumbel, 0.0); }

  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  /// The index i in {0, 1, 2}.
  [[nodiscard]] int index() const { return static_cast<int>(family_); }

  /// 1/|gamma|: alpha = 1/gamma for Frechet, -1/gamma for Weibull. Gumbel has
  /// no power-law exponent.
  [[nodiscard]] double tail_exponent() const {
    if (family_ == Family::gumbel) {
      throw std::domain_error("ExtremeCase::tail_exponent: Gumbel has no tail exponent");
    }
    return 1.0 / std::abs(gamma_);
  }

  [[nodiscard]] std::string name() const {
    switch (family_) {
      case Family::frechet: return "frechet";
      case Family::weibull: return "weibull";
      case Family::gumbel: break;
    }
    return "gumbel";
  }

  friend bool operator==(const ExtremeCase&, const ExtremeCase&) = default;

 private:
  ExtremeCase(Family f, double g) : family_(f), gamma_(g) {}

  Family family_;
  double gamma_;
};

/// Open interval (lo, hi), endpoints may be infinite.
struct Interval {
  double lo;
  double hi;

  [[nodiscard]] bool contains(double x) const { return x > lo && x < hi; }
};

/// Support of the limit law.
inline Interval limit_support(const ExtremeCase& c) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (c.family()) {
    case Family::frechet: return {0.0, inf};
    case Family::weibull: return {-inf, 0.0};
    case Family::gumbel: break;
  }
  return {-inf, inf};
}

/// t = x^{-1/gamma} (Frechet), (-x)^{-1/gamma} (Weibull), e^{-x} (Gumbel).
///
/// Maps the closure of the limit support onto [0, inf], decreasing in x.
/// Throws std::domain_error for x outside that closure.
inline double reduce_to_unit(const ExtremeCase& c, double x) {
  if (std::isnan(x)) throw std::domain_error("reduce_to_unit: x is NaN");
  switch (c.family()) {
    case Family::frechet:
      if (x < 0.0) {
        throw std::domain_error("reduce_to_unit: Frechet requires x >= 0, got " +
                                std::to_string(x));
      }
      return std::pow(x, -1.0 / c.gamma());
    case Family::weibull:
      if (x > 0.0) {
        throw std::domain_error("reduce_to_unit: Weibull requires x <= 0, got " +
                                std::to_string(x));
      }
      return std::pow(-x, -1.0 / c.gamma());
    case Family::gumbel: break;
  }
  return std::exp(-x);
}

/// Inverse of reduce_to_unit for t in [0, inf].
inline double expand_from_unit(const ExtremeCase& c, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("expand_from_unit: t must be >= 0, got " + std::to_string(t));
  }
  switch (c.family()) {
    case Family::frechet: return std::pow(t, -c.gamma());
    case Family::weibull: return -std::pow(t, -c.gamma());
    case Family::gumbel: break;
  }
  return -std::log(t);
}

/// |dt/dx| at an interior point of the limit support.
inline double unit_jacobian(const ExtremeCase& c, double x) {
  const double t = reduce_to_unit(c, x);
  switch (c.family()) {
    case Family::frechet: return t / (c.gamma() * x);
    case Family::weibull: return t / (c.gamma() * x);  // both factors negative
    case Family::gumbel: break;
  }
  return t;
}

inline double limit_cdf(const ExtremeCase& c, double x) {
  const Interval s = limit_support(c);
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return 1.0;
  return std::exp(-reduce_to_unit(c, x));
}

inline double limit_pdf(const ExtremeCase& c, double x) {
  if (!limit_support(c).contains(x)) return 0.0;
  const double t = reduce_to_unit(c, x);
  if (!std::isfinite(t)) return 0.0;
  return std::exp(-t) * unit_jacobian(c, x);
}

/// Throws std::domain_error unless 0 < p < 1.
inline double limit_quantile(const ExtremeCase& c, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("limit_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  return expand_from_unit(c, -std::log(p));
}

/// Exact law of Z_n(i, gamma) for a fixed sample size.
class RepresentationLaw {
 public:
  RepresentationLaw(std::int64_t n, ExtremeCase c) : n_(n), case_(std::move(c)) {
    detail::require_sample_size(n, "RepresentationLaw");
  }

  [[nodiscard]] std::int64_t n() const { return n_; }
  [[nodiscard]] const ExtremeCase& extreme_case() const { return case_; }

  /// (n^{-gamma}, inf), (-n^{-gamma}, 0) or (-log n, inf).
  [[nodiscard]] Interval support() const {
    const double nd = static_cast<double>(n_);
    const Interval s = limit_support(case_);
    switch (case_.family()) {
      case Family::frechet: return {std::pow(nd, -case_.gamma()), s.hi};
      case Family::weibull: return {-std::pow(nd, -case_.gamma()), s.hi};
      case Family::gumbel: break;
    }
    return {-std::log(nd), s.hi};
  }

  [[nodiscard]] double cdf(double x) const {
    const Interval s = limit_support(case_);
    if (x <= s.lo) return 0.0;
    if (x >= s.hi) return 1.0;
    return unit_rep_survival(static_cast<double>(n_), reduce_to_unit(case_, x));
  }

  [[nodiscard]] double pdf(double x) const {
    if (!limit_support(case_).contains(x)) return 0.0;
    const double nd = static_cast<double>(n_);
    const double t = reduce_to_unit(case_, x);
    if (!(t < nd)) return 0.0;
    return std::exp((nd - 1.0) * std::log1p(-t / nd)) * unit_jacobian(case_, x);
  }

  /// Inverse of cdf on (0, 1).
  [[nodiscard]] double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::domain_error("RepresentationLaw::quantile: p must lie in (0, 1)");
    }
    const double nd = static_cast<double>(n_);
    const double t = -nd * std::expm1(std::log(p) / nd);
    return expand_from_unit(case_, t);
  }

 private:
  std::int64_t n_;
  ExtremeCase case_;
};

inline double rep_cdf(std::int64_t n, const ExtremeCase& c, double x) {
  return RepresentationLaw(n, c).cdf(x);
}

inline double rep_pdf(std::int64_t n, const ExtremeCase& c, double x) {
  return RepresentationLaw(n, c).pdf(x);
}

}  // namespace evrate
