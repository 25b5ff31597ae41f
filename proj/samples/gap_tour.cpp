// Quick tour: sieve a range, look at gaps, and test the g_n < Q_n
// inequality for a couple of auxiliary sequences.
//
//   ./gap_tour [n_end]

#include <gapforge/bounds.hpp>
#include <gapforge/gaps.hpp>
#include <gapforge/sequences.hpp>
#include <gapforge/sieve.hpp>
#include <gapforge/xi.hpp>

#include <cstdio>
#include <cstdlib>

using namespace gapforge;

int main(int argc, char** argv) {
  u64 n_end = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;

  PrimeTable primes;
  primes.ensure_count(n_end + 2);
  std::printf("p_%llu = %llu\n", (unsigned long long)n_end,
              (unsigned long long)primes.p(n_end));

  // Largest gap seen in the range, the classic warm-up.
  u64 max_g = 0, max_n = 0;
  for (u64 n = 1; n < n_end; ++n) {
    u64 g = primes.p(n + 1) - primes.p(n);
    if (g > max_g) { max_g = g; max_n = n; }
  }
  std::printf("largest gap below p_%llu: g_%llu = %llu (after %llu)\n",
              (unsigned long long)n_end, (unsigned long long)max_n,
              (unsigned long long)max_g, (unsigned long long)primes.p(max_n));

  // g_n < Q_n for q_n = n ln n. The sequence is only positive from n = 2,
  // so the scan clips the start and says so in the summary.
  auto spec = AuxSequenceSpec::builtin(BuiltinSeq::NLogN);
  XiScanSummary sum = xi_scan(spec, 1, n_end, primes, [](const XiRecord&) {});
  std::printf("n ln n: start=%llu holds=%llu fails=%llu indeterminate=%llu\n",
              (unsigned long long)sum.effective_start,
              (unsigned long long)sum.holds, (unsigned long long)sum.fails,
              (unsigned long long)sum.indeterminate);

  // Same inequality for q_n = n, where it should fail whenever the gap
  // exceeds 2 p_n / n. Count the failures instead of stopping.
  auto ident = AuxSequenceSpec::builtin(BuiltinSeq::IdentityN);
  XiScanSummary isum = xi_scan(ident, 1, n_end, primes, [](const XiRecord&) {});
  std::printf("identity: holds=%llu fails=%llu largest_holds=%llu\n",
              (unsigned long long)isum.holds, (unsigned long long)isum.fails,
              (unsigned long long)(isum.largest_holds ? *isum.largest_holds : 0));

  // Firoozbakht's inequality p_n^(1/n) > p_{n+1}^(1/(n+1)), checked with
  // certified comparisons. No violation is known; the scan just confirms
  // that up to the range end and reports the tightest index.
  FiroozbakhtScan fs = firoozbakht_scan(primes.p(n_end + 1));
  std::printf("firoozbakht: checked=%llu violations=%zu min_margin=%.6g at n=%llu\n",
              (unsigned long long)fs.checked, fs.violations.size(),
              fs.min_margin, (unsigned long long)fs.min_margin_n);
  return 0;
}
