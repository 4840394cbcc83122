// Prints the exact KS distance next to the explicit bound for a few sample
// sizes, then draws Monte Carlo minima for the Gumbel case at n = 50.

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "evrate/evrate.hpp"

int main() {
  using namespace evrate;

  std::printf("%10s %14s %14s %10s %10s\n", "n", "ks", "bound", "ratio", "n*ks");
  for (std::int64_t n : {2, 5, 10, 100, 1000, 100'000, 10'000'000}) {
    const DistanceResult d = ks_tv_exact(n);
    const double bound = theorem_bound(n);
    std::printf("%10lld %14.6e %14.6e %10.4f %10.6f\n", static_cast<long long>(n), d.ks, bound, d.ks / bound,
                static_cast<double>(n) * d.ks);
  }
  std::printf("limit of n*ks: %.6f, limit of n*bound: %.6f\n", 2.0 * std::exp(-2.0), (2.0 + c0()) / 4.0);

  const MCResult mc = empirical_ks(50, ExtremeCase::gumbel(), 200'000, 7);
  std::printf("\nGumbel, n=50, %lld samples: empirical ks %.5f, exact %.5f, DKW eps %.5f -> %s\n",
              static_cast<long long>(mc.samples), mc.empirical_ks, mc.exact_ks, mc.dkw_epsilon,
              mc.pass ? "consistent" : "inconsistent");
  return 0;
}
