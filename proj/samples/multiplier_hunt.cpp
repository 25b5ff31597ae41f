// Kummer-style multipliers in three acts: a convergence certificate for
// sum 1/n^2, the canonical multiplier of a geometric series, and a search
// for the index that disqualifies a randomly chosen multiplier sequence
// against the primes. Ends with the equality recurrence, whose constant
// Q trace doubles as an arithmetic self-check.
//
//   ./multiplier_hunt [seed]

#include <gapforge/bigint.hpp>
#include <gapforge/kummer.hpp>
#include <gapforge/recurrence.hpp>
#include <gapforge/sequences.hpp>
#include <gapforge/sieve.hpp>

#include <cstdio>
#include <cstdlib>
#include <random>

using namespace gapforge;

int main(int argc, char** argv) {
  u64 seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1729;
  PrimeTable primes;

  // b_n = n certifies convergence of sum 1/n^2 with room to spare:
  // n * (n+1)^2 / n^2 - (n+1) = 1 + 1/n >= 1 for every n.
  auto check = kummer_inequality_scan(SeriesSpec::squares().reciprocal(),
                                      AuxSequenceSpec::expression("n"), 1,
                                      EvalValue::exact(BigRat(1)), 20000, primes);
  std::printf("squares, b=n, c=1: violations=%s min_margin=%.6g at n=%llu\n",
              check.violated() ? "yes" : "none", check.min_margin,
              (unsigned long long)check.min_margin_n);

  // The canonical multiplier b_n = (M - partial sum) / a_n. For the
  // geometric series with ratio 2 and M equal to the full sum, the tail
  // identity collapses it to b_n = 1 exactly.
  auto canon = canonical_spec(SeriesSpec::geometric(BigRat(2)),
                              EvalValue::exact(BigRat(1)));
  for (u64 n : {1, 7, 30}) {
    EvalValue b = eval_q(canon, n, primes);
    std::printf("canonical geometric(2): b_%llu = %s\n", (unsigned long long)n,
                rat_to_string(b.rational()).c_str());
  }

  // Any positive b against the prime terms a_n = p_n must eventually hit
  // b_n a_{n+1} - b_{n+1} a_n < a_n. Draw b at random and find the index.
  std::mt19937_64 rng(seed);
  TabulatedSeq table;
  table.values.reserve(4096);
  for (u64 i = 0; i < 4096; ++i)
    table.values.emplace_back(BigRat(8 + (int)(rng() % 153), 16));
  auto b = AuxSequenceSpec::tabulated(std::move(table), "random");
  auto wit = find_violation_witness(SeriesSpec::reciprocal_primes(), b, 1, 4095,
                                    primes);
  if (wit)
    std::printf("seed %llu: witness at n=%llu, lhs=%s < rhs=%s\n",
                (unsigned long long)seed, (unsigned long long)wit->n_prime,
                rat_to_string(wit->lhs.rational()).c_str(),
                rat_to_string(wit->rhs.rational()).c_str());
  else
    std::printf("seed %llu: no witness up to 4095 (try a longer table)\n",
                (unsigned long long)seed);

  // Equality recurrence from (1, 1). Positivity gives out almost at once,
  // and Q stays frozen at 2 until it does.
  RecurrenceRun run = iterate_equality(BigRat(1), BigRat(1), 50, primes);
  std::printf("recurrence (1,1): status=%s", to_string(run.status));
  if (run.status == RunStatus::PositivityFailed)
    std::printf(" fail_index=%llu q=%s", (unsigned long long)run.fail_index,
                rat_to_string(run.values.back()).c_str());
  std::printf(" Q=");
  for (const BigRat& Q : run.Q_trace) std::printf(" %s", rat_to_string(Q).c_str());
  std::printf("\n");
  return 0;
}
