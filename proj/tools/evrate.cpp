// evrate: certification tables for the convergence rate of the extreme-value
// representation laws.
//
// Exit codes: 0 success, 1 a certified inequality failed, 2 usage error,
// 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evrate/evrate.hpp"
#include "evrate/report.hpp"

namespace {

using namespace evrate;
using report::Format;
using report::Record;

enum Exit : int { kOk = 0, kCertificationFailure = 1, kUsage = 2, kIo = 3 };

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Write output to PATH instead of stdout");
}

Format format_of(const Common& c) { return c.format == "json" ? Format::json : Format::csv; }

int emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text << std::flush;
    return std::cout ? kOk : kIo;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "error: cannot open '" << c.out << "' for writing\n";
    return kIo;
  }
  file << text;
  file.close();
  if (!file) {
    std::cerr << "error: failed writing '" << c.out << "'\n";
    return kIo;
  }
  return kOk;
}

std::string render_rows(const std::vector<Record>& rows, Format f) {
  std::ostringstream os;
  report::write_records(os, rows, f);
  return os.str();
}

std::optional<ExtremeCase> case_from(const std::string& name, const std::optional<double>& gamma) {
  if (name.empty()) {
    if (gamma) throw report::usage_error("--gamma given without --case");
    return std::nullopt;
  }
  return report::parse_case(name, gamma ? &*gamma : nullptr);
}

// Worst of the per-command status and the write status.
int finish(int status, int io) { return io != kOk ? io : status; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact distances and universal rate bounds for extreme-value representations"};
  app.require_subcommand(1);

  Common common;
  std::string n_spec;
  std::string case_name;
  std::optional<double> gamma;

  auto* bound = app.add_subcommand("bound", "Lemma and theorem bounds with series checks");
  bound->add_option("--n", n_spec, "N, LO..HI or A,B,C")->required();
  add_common(bound, common);

  auto* distance = app.add_subcommand("distance", "Exact KS/TV distance, proof pieces and chain");
  distance->add_option("--n", n_spec, "N, LO..HI or A,B,C")->required();
  distance->add_option("--case", case_name, "Report in this case's coordinate")
      ->check(CLI::IsMember({"frechet", "weibull", "gumbel"}));
  distance->add_option("--gamma", gamma, "Extreme value index");
  add_common(distance, common);

  auto* crossing = app.add_subcommand("crossing", "Crossing point of the two densities");
  crossing->add_option("--n", n_spec, "N, LO..HI or A,B,C")->required();
  crossing->add_option("--case", case_name, "Also map the crossing into this case")
      ->check(CLI::IsMember({"frechet", "weibull", "gumbel"}));
  crossing->add_option("--gamma", gamma, "Extreme value index");
  add_common(crossing, common);

  std::string log_spec;
  std::int64_t points = 25;
  bool strict = false;
  double tol = 1e-10;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Certification sweep over a grid of n");
  auto* sweep_n = sweep->add_option("--n", n_spec, "N, LO..HI or A,B,C");
  auto* sweep_log = sweep->add_option("--log", log_spec, "Log-spaced grid LO..HI");
  sweep_n->excludes(sweep_log);
  sweep->add_option("--points", points, "Points of the log grid")->check(CLI::PositiveNumber);
  sweep->add_flag("--strict", strict, "Also run the quadrature and scan oracles");
  sweep->add_option("--tol", tol, "Quadrature tolerance (strict)")->check(CLI::Range(1e-12, 1.0));
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
  add_common(sweep, common);

  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double confidence = 0.99;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check against the exact distance");
  simulate->add_option("--n", n_spec, "Sample size n")->required();
  simulate->add_option("--case", case_name, "Extreme value type")
      ->required()
      ->check(CLI::IsMember({"frechet", "weibull", "gumbel"}));
  simulate->add_option("--gamma", gamma, "Extreme value index");
  simulate->add_option("--samples", samples, "Number of draws N");
  simulate->add_option("--seed", seed, "Generator seed");
  simulate->add_option("--confidence", confidence, "DKW confidence level")->check(CLI::Range(0.5, 0.999999));
  simulate->add_option("--threads", threads, "Worker threads (0: all cores)");
  add_common(simulate, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Format fmt = format_of(common);

    if (*bound) {
      std::vector<Record> rows;
      bool ok = true;
      for (std::int64_t n : report::parse_n_spec(n_spec)) {
        const BoundBreakdown b = bound_breakdown(n);
        ok = ok && b.certified();
        rows.push_back(report::to_record(b));
      }
      return finish(ok ? kOk : kCertificationFailure, emit(common, render_rows(rows, fmt)));
    }

    if (*distance) {
      const auto c = case_from(case_name, gamma);
      std::vector<Record> rows;
      bool ok = true;
      for (std::int64_t n : report::parse_n_spec(n_spec)) {
        const DistanceResult d = ks_tv_exact(n);
        ok = ok && report::distance_invariants_hold(d);
        rows.push_back(report::to_record(d, c ? &*c : nullptr));
      }
      return finish(ok ? kOk : kCertificationFailure, emit(common, render_rows(rows, fmt)));
    }

    if (*crossing) {
      const auto c = case_from(case_name, gamma);
      std::vector<Record> rows;
      for (std::int64_t n : report::parse_n_spec(n_spec)) {
        rows.push_back(report::to_record(crossing_point(n), c ? &*c : nullptr));
      }
      return emit(common, render_rows(rows, fmt));
    }

    if (*sweep) {
      std::vector<std::int64_t> grid;
      if (!log_spec.empty()) {
        grid = report::parse_log_spec(log_spec, points);
      } else if (!n_spec.empty()) {
        grid = report::parse_n_spec(n_spec);
      } else {
        throw report::usage_error("sweep needs --n or --log");
      }
      report::SweepOptions opt;
      opt.strict = strict;
      opt.tol = tol;
      const auto rows = report::sweep(grid, opt, threads);
      std::vector<Record> records;
      records.reserve(rows.size());
      for (const auto& r : rows) records.push_back(report::to_record(r));
      const int io = emit(common, render_rows(records, fmt));
      const auto s = report::summarize(rows);
      std::cerr << "rows " << s.rows << ", passing " << s.passing << ", ratio ks/bound in ["
                << report::format_real(s.min_ratio) << ", " << report::format_real(s.max_ratio)
                << "], " << (s.all_pass() ? "ALL PASS" : "FAILURES") << '\n';
      return finish(s.all_pass() ? kOk : kCertificationFailure, io);
    }

    if (*simulate) {
      const auto ns = report::parse_n_spec(n_spec);
      if (ns.size() != 1) throw report::usage_error("simulate takes a single --n");
      if (samples < kMinMonteCarloSamples) throw report::usage_error("--samples must be >= 10000");
      const auto c = case_from(case_name, gamma);
      MCOptions opt;
      opt.confidence = confidence;
      opt.threads = threads;
      const MCResult r = empirical_ks(ns.front(), *c, samples, seed, opt);
      return finish(r.pass ? kOk : kCertificationFailure,
                    emit(common, render_rows({report::to_record(r)}, fmt)));
    }
  } catch (const report::usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCertificationFailure;
  }
  return kUsage;
}
