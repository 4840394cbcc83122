#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "evrate/distributions.hpp"
#include "evrate/metrics.hpp"

namespace evrate {

/// Counter-based 64-bit generator: draw i of stream s under seed k is
/// splitmix64(key(k, s) + (i + 1) * golden), so any worker can jump to any
/// offset and partitioned runs reproduce the sequential one exactly.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t offset = 0)
      : seed_(seed), stream_(stream), key_(mix(seed ^ mix(stream + kGolden))), counter_(offset) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }
  [[nodiscard]] std::uint64_t position() const { return counter_; }

  std::uint64_t next_bits() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() { return (static_cast<double>(next_bits() >> 11) + 0.5) * 0x1p-53; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// Minimum of n uniforms by inversion: 1 - V^{1/n}.
inline double sample_min_uniform(std::int64_t n, RandomStream& rng) {
  if (n < 1) throw std::domain_error("sample_min_uniform: n must be >= 1");
  const double v = rng.uniform();
  return -std::expm1(std::log(v) / static_cast<double>(n));
}

/// One draw of Z_n(i, gamma).
inline double sample_z(std::int64_t n, const ExtremeCase& c, RandomStream& rng) {
  detail::require_sample_size(n, "sample_z");
  const double nu = static_cast<double>(n) * sample_min_uniform(n, rng);
  switch (c.family()) {
    case Family::frechet: return std::pow(nu, -c.gamma());
    case Family::weibull: return -std::pow(nu, -c.gamma());
    case Family::gumbel: break;
  }
  return -std::log(nu);
}

/// sqrt(ln(2 / (1 - confidence)) / (2N)).
inline double dkw_epsilon(std::int64_t samples, double confidence = 0.99) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("dkw_epsilon: confidence must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

/// Two-sided KS statistic of an ascending sample against a continuous CDF.
template <class Cdf>
double ks_statistic_sorted(const std::vector<double>& sorted, Cdf&& cdf) {
  const double count = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / count - f, f - static_cast<double>(i) / count});
  }
  return d;
}

struct MCOptions {
  double confidence = 0.99;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t stream = 0;
};

struct MCResult {
  std::int64_t n = 0;
  ExtremeCase extreme_case = ExtremeCase::gumbel();
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double confidence = 0.99;
  double empirical_ks = 0.0;
  double dkw_epsilon = 0.0;
  double exact_ks = 0.0;
  bool pass = false;

  friend bool operator==(const MCResult&, const MCResult&) = default;
};

inline constexpr std::int64_t kMinMonteCarloSamples = 10'000;

/// Draws `samples` values of Z_n(i, gamma) in `threads` contiguous blocks of
/// one stream, then measures their KS distance to the limit law. Passes when
/// it lies within the DKW band of the exact distance.
inline MCResult empirical_ks(std::int64_t n, const ExtremeCase& c, std::int64_t samples,
                             std::uint64_t seed, const MCOptions& opt = {}) {
  detail::require_sample_size(n, "empirical_ks");
  if (samples < kMinMonteCarloSamples) {
    throw std::domain_error("empirical_ks: need at least 10^4 samples, got " +
                            std::to_string(samples));
  }
  MCResult r;
  r.n = n;
  r.extreme_case = c;
  r.samples = samples;
  r.seed = seed;
  r.stream = opt.stream;
  r.confidence = opt.confidence;
  r.dkw_epsilon = dkw_epsilon(samples, opt.confidence);

  std::vector<double> draws(static_cast<std::size_t>(samples));
  unsigned workers = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, samples));
  const std::int64_t block = (samples + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t begin = std::min<std::int64_t>(samples, w * block);
      const std::int64_t end = std::min<std::int64_t>(samples, begin + block);
      pool.emplace_back([&, begin, end] {
        RandomStream rng(seed, opt.stream, static_cast<std::uint64_t>(begin));
        for (std::int64_t i = begin; i < end; ++i) draws[static_cast<std::size_t>(i)] = sample_z(n, c, rng);
      });
    }
  }
  std::sort(draws.begin(), draws.end());
  r.empirical_ks = ks_statistic_sorted(draws, [&c](double x) { return limit_cdf(c, x); });
  r.exact_ks = ks_tv_exact(n).ks;
  r.pass = std::abs(r.empirical_ks - r.exact_ks) <= r.dkw_epsilon + 1e-9;
  return r;
}

}  // namespace evrate
