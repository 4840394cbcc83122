// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance          run every criterion
//   acceptance 3 5      run criteria 3 and 5
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "evrate/evrate.hpp"
#include "evrate/report.hpp"

namespace {

using namespace evrate;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0: none
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<std::int64_t>& log_grid() {
  static const auto grid = report::parse_log_spec("2..1e6", 25);
  return grid;
}

const std::vector<std::int64_t> kOracleNs{2, 3, 5, 10, 100, 1000, 10000};

Outcome theorem_dominance() {
  Outcome o;
  double worst = 0.0;
  if (log_grid().size() != 25) return {false, "grid does not have 25 points"};
  for (std::int64_t n : log_grid()) {
    const double ks = ks_tv_exact(n).ks;
    const double margin = theorem_bound(n) - ks;
    worst = std::max(worst, ks / theorem_bound(n));
    if (!(margin > 0.0)) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " margin " + fmt(margin) + "; ";
    }
  }
  o.detail += "max ks/bound " + fmt(worst) + " over 25 n in [2, 1e6]";
  return o;
}

Outcome lemma_sandwich() {
  Outcome o;
  for (std::int64_t n : log_grid()) {
    const double gap = g1(n) - 1.0;
    if (!(gap >= 0.0 && gap <= lemma_bound(n))) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " g1-1=" + fmt(gap) + "; ";
    }
  }
  if (o.pass) o.detail = "0 <= g1(n)-1 <= C0*f2(n) on the 25-point grid";
  return o;
}

Outcome series_identities() {
  Outcome o;
  double worst_f1 = 0.0;
  for (std::int64_t n = 2; n <= 100; ++n) {
    const SeriesValue s = lemma_series(n);
    const double rel = std::abs(g1(n) - std::exp(s.value)) / g1(n);
    worst_f1 = std::max(worst_f1, rel);
    if (rel > 1e-12) {
      o.pass = false;
      o.detail += "F1 n=" + std::to_string(n) + "; ";
    }
    if (!(s.value <= f2_bound(n))) {
      o.pass = false;
      o.detail += "F2 n=" + std::to_string(n) + "; ";
    }
  }
  o.detail += "max relative F1 error " + fmt(worst_f1) + ", F2 checked n=2..100";
  return o;
}

Outcome constant_provenance() {
  const double computed = std::exp(f2_bound(2));
  const double diff = std::abs(computed - 1.841673);
  Outcome o;
  o.pass = diff <= 5e-7;
  char buf[160];
  std::snprintf(buf, sizeof buf, "exp(f2_bound(2)) = %.10f, published 1.841673, |diff| = %.3g (limit 5e-7)",
                computed, diff);
  o.detail = buf;
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  double worst_tv = 0.0;
  double worst_scan = 0.0;
  for (std::int64_t n : kOracleNs) {
    const DistanceResult d = ks_tv_exact(n);
    const double tvq = tv_quadrature_oracle(n, 1e-10);
    const double scan = ks_scan_oracle(n, 1'000'000);
    const double gap = d.ks - scan;
    worst_tv = std::max(worst_tv, std::abs(d.ks - tvq));
    worst_scan = std::max(worst_scan, gap);
    if (std::abs(d.ks - tvq) > 1e-8 || gap < 0.0 || gap > 1e-6) {
      o.pass = false;
      o.detail += "n=" + std::to_string(n) + " |ks-tvq|=" + fmt(std::abs(d.ks - tvq)) + " ks-scan=" + fmt(gap) + "; ";
    }
  }
  o.detail += "max |ks-quadrature| " + fmt(worst_tv) + ", max ks-scan " + fmt(worst_scan);
  return o;
}

Outcome ks_equals_tv() {
  Outcome o;
  double worst = 0.0;
  for (std::int64_t n : kOracleNs) {
    const DistanceResult d = ks_tv_exact(n);
    worst = std::max(worst, std::abs(d.ks - d.tv));
    if (std::abs(d.ks - d.tv) > 1e-12) o.pass = false;
  }
  o.detail = "max |ks-tv| " + fmt(worst);
  return o;
}

Outcome invariance() {
  Outcome o;
  const std::vector<ExtremeCase> cases{ExtremeCase::frechet(0.5),  ExtremeCase::frechet(1.0),
                                       ExtremeCase::frechet(2.0),  ExtremeCase::weibull(-0.5),
                                       ExtremeCase::weibull(-2.0), ExtremeCase::gumbel()};
  const std::int64_t grid = 1'000'000;
  double spread_worst = 0.0;
  double reduced_worst = 0.0;
  for (std::int64_t n : std::initializer_list<std::int64_t>{2, 10, 1000}) {
    const double reduced = ks_scan_oracle(n, grid);
    double lo = 1.0, hi = 0.0;
    for (const auto& c : cases) {
      const double v = distance_in_original_coordinates(n, c, grid);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      reduced_worst = std::max(reduced_worst, std::abs(v - reduced));
    }
    spread_worst = std::max(spread_worst, hi - lo);
  }
  o.pass = spread_worst <= 1e-10 && reduced_worst <= 1e-6;
  o.detail = "max spread across cases " + fmt(spread_worst) + ", max distance to reduced scan " + fmt(reduced_worst);
  return o;
}

Outcome decomposition_and_chain() {
  Outcome o;
  double worst = 0.0;
  for (std::int64_t n : log_grid()) {
    const DistanceResult d = ks_tv_exact(n);
    const ProofPieces& p = d.pieces;
    const double err = std::abs(p.mass_left + p.a1 + p.a2 - 2.0 * d.tv);
    worst = std::max(worst, err);
    if (err > 1e-12) o.pass = false;
    for (const ChainStep& s : bound_chain(d)) {
      if (s.asserted && !s.holds) {
        o.pass = false;
        o.detail += "n=" + std::to_string(n) + " step " + s.name + " fails; ";
      }
    }
  }
  o.detail += "max decomposition error " + fmt(worst) + ", bound chain over 25-point sweep";
  return o;
}

Outcome asymptotics() {
  Outcome o;
  const double limit = 2.0 * std::exp(-2.0);
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (std::int64_t n : std::initializer_list<std::int64_t>{10'000, 100'000, 1'000'000}) {
    const double scaled = static_cast<double>(n) * ks_tv_exact(n).ks;
    if (!(std::abs(scaled - limit) < std::abs(prev - limit))) o.pass = false;
    prev = scaled;
    last = scaled;
  }
  const double rel_ks = std::abs(last - limit) / limit;
  const double theorem_limit = (2.0 + c0()) / 4.0;
  const double rel_theorem = std::abs(1e9 * theorem_bound(1'000'000'000) - theorem_limit) / theorem_limit;
  o.pass = o.pass && rel_ks <= 0.01 && rel_theorem <= 0.001;
  o.detail = "n*ks(1e6) = " + fmt(last) + " (rel " + fmt(rel_ks) + " to 2e^-2), n*bound(1e9) rel " + fmt(rel_theorem);
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const std::vector<ExtremeCase> cases{ExtremeCase::frechet(1.0), ExtremeCase::weibull(-1.0), ExtremeCase::gumbel()};
  std::uint64_t seed = 20'261'015;
  double worst = 0.0;
  double eps = 0.0;
  for (std::int64_t n : std::initializer_list<std::int64_t>{2, 100}) {
    for (const auto& c : cases) {
      const MCResult r = empirical_ks(n, c, 1'000'000, seed++);
      eps = r.dkw_epsilon;
      worst = std::max(worst, std::abs(r.empirical_ks - r.exact_ks));
      if (std::abs(r.empirical_ks - r.exact_ks) > r.dkw_epsilon) {
        o.pass = false;
        o.detail += c.name() + " n=" + std::to_string(n) + "; ";
      }
    }
  }
  o.detail += "max |empirical-exact| " + fmt(worst) + " vs DKW eps " + fmt(eps);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "Theorem bound dominance", 5.0, theorem_dominance},
      {2, "Lemma sandwich", 1.0, lemma_sandwich},
      {3, "F1 identity and F2 inequality", 0.0, series_identities},
      {4, "Constant provenance C0 = 1.841673", 0.0, constant_provenance},
      {5, "Oracle agreement", 60.0, oracle_agreement},
      {6, "KS = TV", 0.0, ks_equals_tv},
      {7, "Case and gamma invariance", 0.0, invariance},
      {8, "Proof decomposition and bound chain", 0.0, decomposition_and_chain},
      {9, "Asymptotic sanity", 0.0, asymptotics},
      {10, "Monte Carlo gate", 30.0, monte_carlo},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; exceeded " + fmt(c.time_limit_s) + " s";
    }
    std::printf("[%s] criterion %d: %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
