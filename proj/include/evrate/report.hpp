#pragma once

// Tabular output for the command-line front end: grid specifications,
// sweep rows, and flat records rendered as CSV or JSON lines with 17
// significant digits.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "evrate/bounds.hpp"
#include "evrate/distributions.hpp"
#include "evrate/metrics.hpp"
#include "evrate/montecarlo.hpp"

namespace evrate::report {

/// Malformed command-line value.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::int64_t kMinN = 2;
inline constexpr std::int64_t kMaxN = 1'000'000'000'000;

// ---------------------------------------------------------------------------
// Grid specifications
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

/// Accepts integers and integral scientific notation ("1e6").
inline std::int64_t parse_n(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw usage_error("empty value for n");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw usage_error("not a number: '" + s + "'");
  }
  if (used != s.size()) throw usage_error("not a number: '" + s + "'");
  if (!std::isfinite(v) || v != std::floor(v)) throw usage_error("n must be an integer: '" + s + "'");
  if (v < static_cast<double>(kMinN) || v > static_cast<double>(kMaxN)) {
    throw usage_error("n must lie in [2, 1e12], got '" + s + "'");
  }
  return static_cast<std::int64_t>(v);
}

inline std::pair<std::int64_t, std::int64_t> parse_range(std::string_view s) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) throw usage_error("expected LO..HI, got '" + std::string(s) + "'");
  const std::int64_t lo = parse_n(s.substr(0, dots));
  const std::int64_t hi = parse_n(s.substr(dots + 2));
  if (hi < lo) throw usage_error("empty range '" + std::string(s) + "'");
  return {lo, hi};
}

}  // namespace detail

inline constexpr std::int64_t kMaxListedRange = 10'000'000;

/// "N", "LO..HI" (every integer) or "A,B,C".
inline std::vector<std::int64_t> parse_n_spec(std::string_view spec) {
  std::vector<std::int64_t> out;
  if (spec.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      const auto comma = spec.find(',', start);
      const auto piece = spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start);
      out.push_back(detail::parse_n(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
  if (spec.find("..") != std::string_view::npos) {
    const auto [lo, hi] = detail::parse_range(spec);
    if (hi - lo >= kMaxListedRange) throw usage_error("range too long; use --log for wide grids");
    for (std::int64_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  out.push_back(detail::parse_n(spec));
  return out;
}

/// `points` log-spaced integers from LO to HI inclusive, rounded and
/// deduplicated.
inline std::vector<std::int64_t> parse_log_spec(std::string_view spec, std::int64_t points) {
  const auto [lo, hi] = detail::parse_range(spec);
  if (points < 1) throw usage_error("--points must be >= 1");
  if (points == 1 || lo == hi) return {lo};
  std::vector<std::int64_t> out;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::int64_t k = 0; k < points; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(points - 1);
    auto n = static_cast<std::int64_t>(std::llround(std::exp(a + frac * (b - a))));
    n = std::clamp(n, lo, hi);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

/// Builds a case from its command-line name. Frechet and Weibull need gamma.
inline ExtremeCase parse_case(std::string_view name, const double* gamma) {
  try {
    if (name == "gumbel") return ExtremeCase::gumbel();
    if (name == "frechet" || name == "weibull") {
      if (gamma == nullptr) throw usage_error("--gamma is required for --case " + std::string(name));
      return name == "frechet" ? ExtremeCase::frechet(*gamma) : ExtremeCase::weibull(*gamma);
    }
  } catch (const std::domain_error& e) {
    throw usage_error(e.what());
  }
  throw usage_error("unknown case '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

using Value = std::variant<std::monostate, double, std::int64_t, std::uint64_t, bool, std::string>;

/// Ordered field list; rendered as one CSV row or one JSON object.
class Record {
 public:
  Record& add(std::string key, Value v) {
    fields_.emplace_back(std::move(key), std::move(v));
    return *this;
  }

  [[nodiscard]] const std::vector<std::pair<std::string, Value>>& fields() const { return fields_; }

 private:
  std::vector<std::pair<std::string, Value>> fields_;
};

enum class Format { csv, json };

// Shortest text that round-trips to the same double.
inline std::string format_real(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

struct Render {
  Format format;

  std::string operator()(std::monostate) const { return format == Format::json ? "null" : ""; }
  std::string operator()(double v) const {
    if (!std::isfinite(v)) return format == Format::json ? "null" : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    return format_real(v);
  }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string& v) const { return format == Format::json ? json_string(v) : v; }
};

}  // namespace detail

inline std::string csv_header(const Record& r) {
  std::string out;
  for (const auto& [k, v] : r.fields()) {
    if (!out.empty()) out += ',';
    out += k;
  }
  return out;
}

inline std::string render(const Record& r, Format f) {
  const detail::Render visit{f};
  std::string out;
  if (f == Format::json) out += '{';
  bool first = true;
  for (const auto& [k, v] : r.fields()) {
    if (!first) out += ',';
    first = false;
    if (f == Format::json) out += detail::json_string(k) + ':';
    out += std::visit(visit, v);
  }
  if (f == Format::json) out += '}';
  return out;
}

/// Header (CSV only) followed by one line per record.
inline void write_records(std::ostream& os, const std::vector<Record>& rows, Format f) {
  if (rows.empty()) return;
  if (f == Format::csv) os << csv_header(rows.front()) << '\n';
  for (const Record& r : rows) os << render(r, f) << '\n';
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

inline constexpr std::string_view kSweepHeader =
    "n,ks_exact,tv_quadrature,ks_scan,theorem_bound,lemma_bound,g1_minus_1,y_star,ratio,pass";

struct SweepOptions {
  bool strict = false;
  double tol = 1e-10;
  std::int64_t scan_grid = 100'000;
};

struct SweepRow {
  std::int64_t n = 0;
  double ks_exact = 0.0;
  double tv_quadrature = std::numeric_limits<double>::quiet_NaN();  // strict only
  double ks_scan = std::numeric_limits<double>::quiet_NaN();        // strict only
  double theorem_bound = 0.0;
  double lemma_bound = 0.0;
  double g1_minus_1 = 0.0;
  double y_star = 0.0;
  double ratio = 0.0;
  bool all_checks_pass = false;
};

/// Every metrics and bounds invariant at a single n.
inline bool distance_invariants_hold(const DistanceResult& d) {
  const double nd = static_cast<double>(d.n);
  const CrossingPoint& c = d.crossing;
  const ProofPieces& p = d.pieces;
  const bool crossing_ok = c.y_star >= 1.0 && c.y_star < nd && c.residual <= 1e-13 &&
                           c.bracket_width <= 1e-13 * nd;
  const bool distance_ok = d.ks >= 0.0 && d.ks <= d.tv + 1e-12 && d.tv <= 1.0 &&
                           std::abs(d.ks - d.tv) <= 1e-12;
  const bool pieces_ok = std::abs(p.mass_left + p.a1 + p.a2 - 2.0 * d.tv) <= 1e-12 &&
                         p.a2 <= p.alpha_n3 && p.alpha_n3_tight <= p.alpha_n3;
  return crossing_ok && distance_ok && pieces_ok && chain_holds(bound_chain(d));
}

inline SweepRow make_sweep_row(std::int64_t n, const SweepOptions& opt = {}) {
  const DistanceResult d = ks_tv_exact(n);
  const BoundBreakdown b = bound_breakdown(n);
  SweepRow row;
  row.n = n;
  row.ks_exact = d.ks;
  row.theorem_bound = b.theorem_bound;
  row.lemma_bound = b.lemma_bound;
  row.g1_minus_1 = b.g1_minus_1;
  row.y_star = d.crossing.y_star;
  row.ratio = d.ks / b.theorem_bound;

  bool ok = distance_invariants_hold(d) && b.certified() && row.ratio > 0.0 && row.ratio <= 1.0;
  if (opt.strict) {
    row.tv_quadrature = tv_quadrature_oracle(n, opt.tol);
    row.ks_scan = ks_scan_oracle(n, opt.scan_grid);
    const double scan_gap = d.ks - row.ks_scan;
    ok = ok && std::abs(row.tv_quadrature - d.tv) <= 1e-8 && scan_gap >= -1e-15 && scan_gap <= 1e-6;
  }
  row.all_checks_pass = ok;
  return row;
}

/// Rows in input order; computed on `threads` workers.
inline std::vector<SweepRow> sweep(const std::vector<std::int64_t>& grid, const SweepOptions& opt,
                                   unsigned threads = 0) {
  std::vector<SweepRow> rows(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, grid.size())));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = make_sweep_row(grid[i], opt);
      });
    }
  }
  return rows;
}

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t passing = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;

  [[nodiscard]] bool all_pass() const { return rows > 0 && passing == rows; }
};

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  s.min_ratio = std::numeric_limits<double>::infinity();
  s.max_ratio = -std::numeric_limits<double>::infinity();
  for (const SweepRow& r : rows) {
    if (r.all_checks_pass) ++s.passing;
    s.min_ratio = std::min(s.min_ratio, r.ratio);
    s.max_ratio = std::max(s.max_ratio, r.ratio);
  }
  return s;
}

inline Record to_record(const SweepRow& r) {
  auto optional = [](double v) -> Value {
    if (std::isnan(v)) return std::monostate{};
    return v;
  };
  Record rec;
  rec.add("n", r.n)
      .add("ks_exact", r.ks_exact)
      .add("tv_quadrature", optional(r.tv_quadrature))
      .add("ks_scan", optional(r.ks_scan))
      .add("theorem_bound", r.theorem_bound)
      .add("lemma_bound", r.lemma_bound)
      .add("g1_minus_1", r.g1_minus_1)
      .add("y_star", r.y_star)
      .add("ratio", r.ratio)
      .add("pass", r.all_checks_pass);
  return rec;
}

inline Record to_record(const BoundBreakdown& b) {
  Record rec;
  rec.add("n", b.n)
      .add("g1", b.g1)
      .add("g1_minus_1", b.g1_minus_1)
      .add("series_value", b.series.value)
      .add("series_tail_bound", b.series.tail_bound)
      .add("series_terms", static_cast<std::int64_t>(b.series.terms))
      .add("f2_value", b.f2_value)
      .add("c0", b.c0)
      .add("c0_published", kPublishedC0)
      .add("lemma_bound", b.lemma_bound)
      .add("theorem_bound", b.theorem_bound)
      .add("f1_ok", b.f1_holds)
      .add("f2_ok", b.f2_holds)
      .add("lemma_ok", b.lemma_holds)
      .add("theta_ok", b.theta_holds)
      .add("certified", b.certified());
  return rec;
}

inline Record to_record(const CrossingPoint& c, const ExtremeCase* original) {
  Record rec;
  rec.add("n", c.n)
      .add("y_star", c.y_star)
      .add("residual", c.residual)
      .add("bracket_width", c.bracket_width)
      .add("bisections", static_cast<std::int64_t>(c.bisections))
      .add("newton_steps", static_cast<std::int64_t>(c.newton_steps));
  if (original != nullptr) {
    rec.add("case", original->name()).add("gamma", original->gamma()).add("x_star", c.in_original(*original));
  }
  return rec;
}

/// Distance, proof pieces and each chain step flattened into one record.
/// With a case, also the crossing in that coordinate and the grid scan there.
inline Record to_record(const DistanceResult& d, const ExtremeCase* original,
                        std::int64_t scan_grid = 100'000) {
  Record rec;
  rec.add("n", d.n)
      .add("case", original ? original->name() : std::string("reduced"))
      .add("gamma", original ? Value(original->gamma()) : Value(std::monostate{}))
      .add("ks", d.ks)
      .add("tv", d.tv)
      .add("y_star", d.crossing.y_star)
      .add("x_star", original ? Value(d.crossing.in_original(*original)) : Value(std::monostate{}))
      .add("ks_original_scan",
           original ? Value(distance_in_original_coordinates(d.n, *original, scan_grid))
                    : Value(std::monostate{}))
      .add("residual", d.crossing.residual)
      .add("mass_left", d.pieces.mass_left)
      .add("a1", d.pieces.a1)
      .add("a2", d.pieces.a2)
      .add("alpha_n3", d.pieces.alpha_n3)
      .add("alpha_n3_tight", d.pieces.alpha_n3_tight)
      .add("ell_sup", d.pieces.ell_sup);
  const auto chain = bound_chain(d);
  for (const ChainStep& s : chain) {
    rec.add(s.name + "_lhs", s.lhs).add(s.name + "_rhs", s.rhs).add(s.name + "_holds", s.holds);
  }
  rec.add("chain_ok", chain_holds(chain));
  return rec;
}

inline Record to_record(const MCResult& r) {
  Record rec;
  rec.add("n", r.n)
      .add("case", r.extreme_case.name())
      .add("gamma", r.extreme_case.gamma())
      .add("samples", r.samples)
      .add("seed", r.seed)
      .add("stream", r.stream)
      .add("confidence", r.confidence)
      .add("empirical_ks", r.empirical_ks)
      .add("dkw_epsilon", r.dkw_epsilon)
      .add("exact_ks", r.exact_ks)
      .add("pass", r.pass);
  return rec;
}

}  // namespace evrate::report
