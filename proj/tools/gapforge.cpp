// gapforge: prime gap exploration and verification CLI.
//
// Subcommands: sieve, gaps, xi, verify {firoozbakht|rosser|two-over-n|
// kourbatov|sharp|compare-bounds}, kummer {scan|witness|canonical}, liminf,
// recurrence, classical.
//
// Exit codes: 0 completed; 1 a verified property was violated (or a sought
// witness was not found); 2 usage/config error; 3 more Indeterminate
// comparisons than --max-indet allows.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "gapforge/bounds.hpp"
#include "gapforge/io.hpp"
#include "gapforge/kummer.hpp"
#include "gapforge/recurrence.hpp"
#include "gapforge/sieve.hpp"
#include "gapforge/xi.hpp"

namespace gf = gapforge;
using gf::u64;

namespace {

constexpr u64 kDefaultRngSeed = 1729;  // documented default for --seed-rng

constexpr u64 kNoIndetLimit = ~u64(0);

// Counts accept plain integers or scientific notation (1e8).
u64 parse_count(const std::string& text, const char* what) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    errno = 0;
    char* end = nullptr;
    unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size())
      throw gf::DomainError(gf::strf("bad %s '%s'", what, text.c_str()));
    return v;
  }
  errno = 0;
  char* end = nullptr;
  long double v = std::strtold(text.c_str(), &end);
  if (errno != 0 || end == text.c_str() || *end != '\0' || !(v >= 0) || v > 9.2e18L)
    throw gf::DomainError(gf::strf("bad %s '%s'", what, text.c_str()));
  long double r = nearbyintl(v);
  if (fabsl(v - r) > 1e-9L * std::max<long double>(1.0L, fabsl(v)))
    throw gf::DomainError(gf::strf("%s '%s' is not an integer", what, text.c_str()));
  return static_cast<u64>(r);
}

struct CommonOpts {
  std::string out = "-";
  std::string format = "csv";
  unsigned parallel = 0;
  std::string segment_size = "1048576";
  double guard = 1e-9;
  double guard_ext = 1e-13;
  std::string max_indet;  // empty = subcommand default
  u64 seed_rng = kDefaultRngSeed;

  gf::CompareConfig compare() const { return {guard, guard_ext}; }
  gf::SieveConfig sieve(u64 limit = 0) const {
    gf::SieveConfig cfg;
    cfg.limit = limit;
    cfg.segment_size = parse_count(segment_size, "--segment-size");
    cfg.parallelism = parallel;
    return cfg;
  }
  u64 indet_limit(u64 fallback) const {
    return max_indet.empty() ? fallback : parse_count(max_indet, "--max-indet");
  }
  gf::io::Format fmt() const { return gf::io::parse_format(format); }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "record output path ('-' = stdout)");
  cmd->add_option("--format", o.format, "record format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--parallel", o.parallel, "worker threads (0 = hardware)");
  cmd->add_option("--segment-size", o.segment_size, "sieve segment size in odd numbers");
  cmd->add_option("--guard", o.guard, "relative guard-band floor for float verdicts");
  cmd->add_option("--guard-ext", o.guard_ext, "guard floor for the long double retry");
  cmd->add_option("--max-indet", o.max_indet,
                  "indeterminate-comparison budget before exit code 3 "
                  "(default 0 for verify, unlimited elsewhere)");
  cmd->add_option("--seed-rng", o.seed_rng,
                  gf::strf("seed for generated random sequences (default %llu)",
                           static_cast<unsigned long long>(kDefaultRngSeed)));
}

gf::AuxSequenceSpec parse_seq(const std::string& text) {
  if (auto b = gf::builtin_from_name(text)) return gf::AuxSequenceSpec::builtin(*b);
  if (!text.empty() && text[0] == '@')
    return gf::AuxSequenceSpec::tabulated_csv(text.substr(1));
  return gf::AuxSequenceSpec::expression(text);
}

gf::TabulatedSeq random_positive_table(u64 seed, u64 len) {
  std::mt19937_64 rng(seed);
  gf::TabulatedSeq t;
  t.first_n = 1;
  t.values.reserve(len);
  for (u64 i = 0; i < len; ++i) {
    u64 k = 8 + rng() % 153;  // k/16, uniform over [1/2, 10]
    t.values.emplace_back(gf::BigInt(k), gf::BigInt(16));
  }
  return t;
}

gf::SeriesSpec parse_series(const std::string& text) {
  if (text == "reciprocal_primes") return gf::SeriesSpec::reciprocal_primes();
  if (text == "harmonic") return gf::SeriesSpec::harmonic();
  if (text == "squares") return gf::SeriesSpec::squares();
  for (const char* head : {"geometric:", "geometric("}) {
    if (text.rfind(head, 0) == 0) {
      std::string inner = text.substr(std::string(head).size());
      if (!inner.empty() && inner.back() == ')') inner.pop_back();
      return gf::SeriesSpec::geometric(gf::rat_from_string(inner));
    }
  }
  if (!text.empty() && text[0] == '@')
    return gf::SeriesSpec::tabulated(gf::read_tabulated_csv(text.substr(1)), text.substr(1));
  return gf::SeriesSpec::expression(text);
}

std::string rat_or_float(const gf::EvalValue& v) {
  if (v.is_exact()) return gf::rat_to_string(v.rational());
  return gf::fmt_double(v.value());
}

int finish(u64 violations_exit1, u64 indet, u64 indet_limit) {
  if (violations_exit1 > 0) return 1;
  if (indet > indet_limit) return 3;
  return 0;
}

// Both kummer drivers read a at n+1 and b at n+1, so a finite table caps the
// usable scan end one short of its last row.
u64 clamp_scan_end(u64 N, const gf::SeriesSpec& a, const gf::AuxSequenceSpec& b) {
  if (auto last = a.last_valid_index()) N = std::min(N, *last - 1);
  if (auto last = b.last_valid_index()) N = std::min(N, *last - 1);
  return N;
}

// ---- sieve ----

int run_sieve(const CommonOpts& o, const std::string& limit_s, const std::string& nth_s,
              const std::string& count_s) {
  int given = !limit_s.empty() + !nth_s.empty() + !count_s.empty();
  if (given != 1)
    throw gf::DomainError("pass exactly one of --limit, --nth, --count");
  if (!nth_s.empty()) {
    u64 n = parse_count(nth_s, "--nth");
    u64 p = gf::nth_prime(n, o.sieve());
    std::cout << "nth n=" << n << " p=" << p << "\n";
    return 0;
  }
  if (!count_s.empty()) {
    u64 x = parse_count(count_s, "--count");
    u64 k = gf::prime_count(x, o.sieve(x));
    std::cout << "count x=" << x << " pi=" << k << "\n";
    return 0;
  }
  u64 limit = parse_count(limit_s, "--limit");
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  gf::io::write_prime_header(sink.os(), fmt);
  gf::PrimeStream stream(limit, o.sieve(limit));
  u64 count = 0, last = 0;
  while (auto ip = stream.next()) {
    gf::io::write_prime_row(sink.os(), fmt, *ip);
    ++count;
    last = ip->p;
  }
  sink.flush();
  std::cout << "sieve limit=" << limit << " primes=" << count << " last=" << last << "\n";
  return 0;
}

// ---- gaps ----

int run_gaps(const CommonOpts& o, const std::string& from_s, const std::string& to_s) {
  u64 from = parse_count(from_s, "--from");
  u64 to = parse_count(to_s, "--to");
  gf::PrimeTable primes(o.sieve());
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  gf::io::write_gap_header(sink.os(), fmt);
  u64 count = 0, max_gap = 0, max_at = 0;
  gf::for_each_gap(primes, from, to, [&](const gf::GapRecord& r) {
    gf::io::write_gap_row(sink.os(), fmt, r);
    ++count;
    if (r.g > max_gap) {
      max_gap = r.g;
      max_at = r.n;
    }
  });
  sink.flush();
  std::cout << "gaps from=" << from << " to=" << to << " count=" << count
            << " max_gap=" << max_gap << " at=" << max_at << "\n";
  return 0;
}

// ---- xi ----

int run_xi(const CommonOpts& o, const std::string& seq_s, const std::string& from_s,
           const std::string& to_s, bool density, const std::string& block_s) {
  gf::AuxSequenceSpec spec = parse_seq(seq_s);
  gf::PrimeTable primes(o.sieve());
  gf::XiScanConfig cfg;
  cfg.compare = o.compare();
  cfg.parallelism = o.parallel;
  u64 indet_limit = o.indet_limit(kNoIndetLimit);
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();

  if (density) {
    u64 N = parse_count(to_s, "--to");
    u64 block = parse_count(block_s, "--block");
    gf::DensityReport rep = gf::xi_density(spec, N, block, primes, cfg);
    gf::io::write_density_header(sink.os(), fmt);
    u64 empty_blocks = 0;
    for (const auto& b : rep.blocks) {
      gf::io::write_density_row(sink.os(), fmt, b);
      if (b.holds == 0) ++empty_blocks;
    }
    sink.flush();
    std::cout << "xi-density seq=" << spec.label() << " N=" << N << " block=" << block
              << " effective_from=" << rep.effective_start << " holds=" << rep.holds
              << " fails=" << rep.fails << " indeterminate=" << rep.indeterminate
              << " largest_holds=" << (rep.largest_holds ? *rep.largest_holds : 0)
              << " blocks_without_holds=" << empty_blocks << "\n";
    return finish(0, rep.indeterminate, indet_limit);
  }

  u64 from = parse_count(from_s, "--from");
  u64 to = parse_count(to_s, "--to");
  gf::io::write_xi_header(sink.os(), fmt);
  gf::XiScanSummary sum = gf::xi_scan(
      spec, from, to, primes,
      [&](const gf::XiRecord& r) { gf::io::write_xi_row(sink.os(), fmt, r); }, cfg);
  sink.flush();
  std::cout << "xi seq=" << spec.label() << " from=" << sum.requested_start
            << " effective_from=" << sum.effective_start << " to=" << sum.end
            << " holds=" << sum.holds << " fails=" << sum.fails
            << " indeterminate=" << sum.indeterminate << " exact=" << sum.exact_count
            << " largest_holds=" << (sum.largest_holds ? *sum.largest_holds : 0) << "\n";
  return finish(0, sum.indeterminate, indet_limit);
}

// ---- verify ----

int run_verify_firoozbakht(const CommonOpts& o, const std::string& limit_s) {
  u64 limit = parse_count(limit_s, "--limit");
  gf::FiroozbakhtScan scan = gf::firoozbakht_scan(limit, o.sieve(limit), o.compare());
  std::string summary = gf::strf(
      "firoozbakht limit=%llu checked=%llu violations=%llu exact_fallbacks=%llu",
      static_cast<unsigned long long>(limit), static_cast<unsigned long long>(scan.checked),
      static_cast<unsigned long long>(scan.violations.size()),
      static_cast<unsigned long long>(scan.exact_fallbacks));
  summary += " min_margin=" + gf::fmt_double(scan.min_margin) +
             gf::strf(" min_margin_n=%llu", static_cast<unsigned long long>(scan.min_margin_n));
  std::cout << summary << "\n";
  for (u64 n : scan.violations) std::cout << "violation n=" << n << "\n";
  if (o.out != "-" && !o.out.empty()) {
    gf::io::OutputSink sink(o.out);
    sink.os() << summary << "\n";
    for (u64 n : scan.violations) sink.os() << "violation n=" << n << "\n";
  }
  return finish(scan.violations.size(), 0, o.indet_limit(0));
}

int run_verify_rosser(const CommonOpts& o, const std::string& n_s) {
  u64 N = parse_count(n_s, "--n");
  gf::PrimeTable primes(o.sieve());
  primes.ensure_count(N);
  u64 violations = 0, indet = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  u64 min_at = 0;
  for (u64 n = 1; n <= N; ++n) {
    gf::Verdict v = gf::rosser_pair_check(n, primes.p(n), o.compare());
    if (v.fails()) ++violations;
    else if (v.indeterminate()) ++indet;
    if (v.margin < min_margin) {
      min_margin = v.margin;
      min_at = n;
    }
  }
  std::cout << "rosser n=" << N << " violations=" << violations
            << " indeterminate=" << indet << " min_margin=" << gf::fmt_double(min_margin)
            << " min_margin_n=" << min_at << "\n";
  return finish(violations, indet, o.indet_limit(0));
}

// Shared driver for the per-index gap bounds. These inequalities are
// infinitely-often statements, so individual Fails rows are expected; the
// failure signal is a complete dyadic block with no Holds at all.
int run_verify_bound(const CommonOpts& o, const std::string& name,
                     const std::string& from_s, const std::string& to_s, u64 min_from) {
  u64 from = std::max(parse_count(from_s, "--from"), min_from);
  u64 to = parse_count(to_s, "--to");
  if (from > to) throw gf::DomainError("need --from <= --to");
  gf::PrimeTable primes(o.sieve());
  primes.ensure_count(to + 1);
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  gf::io::write_bound_header(sink.os(), fmt);
  gf::DyadicHoldsTracker dyadic;
  u64 holds = 0, fails = 0, indet = 0;
  auto cfg = o.compare();
  for (u64 n = from; n <= to; ++n) {
    gf::BoundReport rep;
    if (name == "two_over_n") {
      gf::GapRecord r = gf::gap_record(primes, n);
      rep.n = n;
      rep.g = r.g;
      rep.rhs = gf::EvalValue::exact(gf::BigRat(gf::BigInt(2) * r.p, gf::BigInt(n)));
      rep.verdict = gf::two_over_n_pair_check(n, r.p, r.p_next);
    } else if (name == "kourbatov") {
      rep = gf::kourbatov_bound_check(primes, n, cfg);
    } else {
      rep = gf::sharp_bound_check(primes, n, cfg);
    }
    gf::io::write_bound_row(sink.os(), fmt, rep);
    dyadic.add(n, rep.verdict.holds());
    if (rep.verdict.holds()) ++holds;
    else if (rep.verdict.fails()) ++fails;
    else ++indet;
  }
  sink.flush();
  u64 empty_blocks = 0;
  for (const auto& b : dyadic.complete_blocks(from, to))
    if (b.holds == 0) ++empty_blocks;
  std::cout << name << " from=" << from << " to=" << to << " holds=" << holds
            << " fails=" << fails << " indeterminate=" << indet
            << " empty_dyadic_blocks=" << empty_blocks << "\n";
  return finish(empty_blocks, indet, o.indet_limit(0));
}

int run_verify_compare(const CommonOpts& o, const std::string& from_s,
                       const std::string& to_s, const std::string& b_s) {
  u64 from = parse_count(from_s, "--from");
  u64 to = parse_count(to_s, "--to");
  gf::EvalValue b = gf::EvalValue::exact(gf::rat_from_string(b_s));
  gf::PrimeTable primes(o.sieve());
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  gf::io::write_compare_header(sink.os(), fmt);
  gf::ComparisonSummary sum = gf::bound_comparison_scan(
      from, to, b, primes,
      [&](const gf::ComparisonRow& r) { gf::io::write_compare_row(sink.os(), fmt, r); },
      o.compare());
  sink.flush();
  std::cout << "compare_bounds from=" << from << " to=" << to << " b=" << b_s
            << " rows=" << sum.rows << " not_smaller=" << sum.not_smaller
            << " last_not_smaller="
            << (sum.last_not_smaller ? gf::strf("%llu", static_cast<unsigned long long>(
                                                            *sum.last_not_smaller))
                                     : std::string("none"))
            << "\n";
  return finish(sum.not_smaller, 0, o.indet_limit(0));
}

// ---- kummer ----

int run_kummer_scan(const CommonOpts& o, const std::string& a_s, const std::string& b_s,
                    bool reciprocal, const std::string& n0_s, const std::string& c_s,
                    const std::string& to_s, const std::string& b_len_s) {
  gf::SeriesSpec a = parse_series(a_s);
  if (reciprocal) a = a.reciprocal();
  gf::AuxSequenceSpec b =
      b_s == "random"
          ? gf::AuxSequenceSpec::tabulated(
                random_positive_table(o.seed_rng, parse_count(b_len_s, "--b-len")),
                gf::strf("random(%llu)", static_cast<unsigned long long>(o.seed_rng)))
          : parse_seq(b_s);
  u64 n0 = parse_count(n0_s, "--n0");
  u64 N = clamp_scan_end(parse_count(to_s, "--to"), a, b);
  gf::EvalValue c = gf::EvalValue::exact(gf::rat_from_string(c_s));
  gf::PrimeTable primes(o.sieve());
  gf::KummerCheck chk = gf::kummer_inequality_scan(a, b, n0, c, N, primes, o.compare());
  std::cout << "kummer-scan a=" << a.label() << " b=" << b.label() << " n0=" << n0
            << " c=" << c_s << " scanned_to=" << chk.scanned_to << " holds=" << chk.holds
            << " indeterminate=" << chk.indeterminate << " first_violation="
            << (chk.first_violation
                    ? gf::strf("%llu", static_cast<unsigned long long>(*chk.first_violation))
                    : std::string("none"))
            << " min_margin="
            << (chk.holds ? gf::fmt_double(chk.min_margin) : std::string("none")) << "\n";
  return finish(chk.first_violation ? 1 : 0, chk.indeterminate,
                o.indet_limit(kNoIndetLimit));
}

int run_kummer_witness(const CommonOpts& o, const std::string& a_s, const std::string& b_s,
                       const std::string& from_s, const std::string& to_s,
                       const std::string& b_len_s) {
  gf::SeriesSpec a = parse_series(a_s);
  gf::AuxSequenceSpec b =
      b_s == "random"
          ? gf::AuxSequenceSpec::tabulated(
                random_positive_table(o.seed_rng, parse_count(b_len_s, "--b-len")),
                gf::strf("random(%llu)", static_cast<unsigned long long>(o.seed_rng)))
          : parse_seq(b_s);
  u64 from = parse_count(from_s, "--from");
  u64 to = clamp_scan_end(parse_count(to_s, "--to"), a, b);
  gf::PrimeTable primes(o.sieve());
  auto wit = gf::find_violation_witness(a, b, from, to, primes, o.compare());
  if (!wit) {
    std::cout << "kummer-witness a=" << a.label() << " b=" << b.label() << " from=" << from
              << " to=" << to << " found=no\n";
    return 1;  // not found up to N; refutes nothing but the search failed
  }
  std::cout << "kummer-witness a=" << a.label() << " b=" << b.label() << " from=" << from
            << " to=" << to << " found=yes n=" << wit->n_prime
            << " lhs=" << rat_or_float(wit->lhs) << " rhs=" << rat_or_float(wit->rhs)
            << "\n";
  return 0;
}

int run_kummer_canonical(const CommonOpts& o, const std::string& a_s,
                         const std::string& m_s, const std::string& n_s) {
  gf::SeriesSpec a = parse_series(a_s);
  gf::EvalValue M = gf::EvalValue::exact(gf::rat_from_string(m_s));
  u64 N = parse_count(n_s, "--n");
  gf::PrimeTable primes(o.sieve());
  gf::AuxSequenceSpec canon = gf::canonical_spec(a, M);
  gf::EvalValue last;
  if (!o.out.empty() && o.out != "-") {
    gf::io::OutputSink sink(o.out);
    auto fmt = o.fmt();
    if (fmt == gf::io::Format::Csv) sink.os() << "n,b_n\n";
    for (u64 n = 1; n <= N; ++n) {
      last = canon.raw(n, primes);
      if (fmt == gf::io::Format::Csv)
        sink.os() << n << ',' << rat_or_float(last) << '\n';
      else
        sink.os() << "{\"n\":" << n << ",\"b_n\":\"" << rat_or_float(last) << "\"}\n";
    }
    sink.flush();
  } else {
    last = canon.raw(N, primes);
  }
  std::cout << "kummer-canonical a=" << a.label() << " M=" << m_s << " n=" << N
            << " b_n=" << rat_or_float(last) << "\n";
  return 0;
}

// ---- liminf ----

int run_liminf(const CommonOpts& o, const std::string& metric_s, double eps,
               const std::string& seq_s, const std::string& n_s,
               const std::string& factor_s) {
  auto metric = gf::liminf_metric_from_name(metric_s);
  if (!metric) throw gf::DomainError("unknown metric '" + metric_s + "'");
  gf::LiminfSpec spec;
  spec.metric = *metric;
  spec.eps = eps;
  if (!seq_s.empty()) spec.seq = parse_seq(seq_s);
  u64 N = parse_count(n_s, "--n");
  u64 factor = parse_count(factor_s, "--checkpoint-factor");
  gf::PrimeTable primes(o.sieve());
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  gf::io::write_liminf_header(sink.os(), fmt);
  gf::LiminfResult res = gf::liminf_track(
      spec, N, primes,
      [&](const gf::LiminfRow& row) {
        gf::io::write_liminf_row(sink.os(), fmt, metric_s, row);
      },
      factor, o.compare());
  sink.flush();
  std::cout << "liminf metric=" << metric_s << " n=" << N << " processed=" << res.processed
            << " kind=" << (res.is_sum ? "sum" : "min")
            << " stat=" << gf::fmt_double(res.stat) << " arg=" << res.arg << "\n";
  return 0;
}

// ---- recurrence ----

int run_recurrence(const CommonOpts& o, const std::string& seed_s, const std::string& n_s,
                   const std::string& budget_s) {
  auto comma = seed_s.find(',');
  if (comma == std::string::npos)
    throw gf::DomainError("--seed needs two values, e.g. --seed 1,1");
  gf::BigRat q1 = gf::rat_from_string(seed_s.substr(0, comma));
  gf::BigRat q2 = gf::rat_from_string(seed_s.substr(comma + 1));
  u64 N = parse_count(n_s, "--n");
  u64 budget = parse_count(budget_s, "--bit-budget");
  gf::PrimeTable primes(o.sieve());
  gf::RecurrenceRun run = gf::iterate_equality(q1, q2, N, primes, budget);
  gf::io::OutputSink sink(o.out);
  gf::io::write_recurrence_run(sink.os(), o.fmt(), run);
  sink.flush();
  std::cout << "recurrence seed=" << gf::rat_to_string(q1) << ","
            << gf::rat_to_string(q2) << " n=" << N << " status=" << to_string(run.status);
  if (run.status == gf::RunStatus::PositivityFailed)
    std::cout << " fail_index=" << run.fail_index;
  else
    std::cout << " completed_n=" << run.completed_n;
  std::cout << " values=" << run.values.size();
  if (!run.Q_trace.empty()) std::cout << " Q=" << gf::rat_to_string(run.Q_trace.front());
  std::cout << "\n";
  return 0;
}

// ---- classical ----

int run_classical(const CommonOpts& o, const std::string& n_s) {
  u64 N = parse_count(n_s, "--n");
  gf::PrimeTable primes(o.sieve());
  gf::ClassicalReport rep = gf::classical_checks(N, primes, o.compare());
  gf::io::OutputSink sink(o.out);
  auto fmt = o.fmt();
  if (fmt == gf::io::Format::Csv) sink.os() << "n,p_n,ratio,root\n";
  for (const auto& cp : rep.checkpoints) {
    if (fmt == gf::io::Format::Csv) {
      sink.os() << cp.n << ',' << cp.p << ',' << gf::fmt_double(cp.ratio) << ','
                << gf::fmt_double(cp.root) << '\n';
    } else {
      sink.os() << "{\"n\":" << cp.n << ",\"p_n\":" << cp.p
                << ",\"ratio\":" << gf::fmt_double(cp.ratio)
                << ",\"root\":" << gf::fmt_double(cp.root) << "}\n";
    }
  }
  sink.flush();
  const auto& final_cp = rep.checkpoints.back();
  std::cout << "classical n=" << N << " violations=" << rep.violations.size()
            << " indeterminate=" << rep.indeterminate
            << " max_ratio=" << gf::fmt_double(rep.max_ratio)
            << " max_ratio_n=" << rep.max_ratio_n
            << " ratio_at_end=" << gf::fmt_double(final_cp.ratio)
            << " root_at_end=" << gf::fmt_double(final_cp.root) << "\n";
  return finish(rep.violations.size(), rep.indeterminate, o.indet_limit(0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime gap exploration and verification toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::function<int()> action;

  // sieve
  {
    auto* cmd = app.add_subcommand("sieve", "emit primes, or answer nth/count queries");
    auto opts = std::make_shared<std::array<std::string, 3>>();
    cmd->add_option("--limit", (*opts)[0], "emit all primes <= limit");
    cmd->add_option("--nth", (*opts)[1], "print the nth prime");
    cmd->add_option("--count", (*opts)[2], "print pi(x)");
    add_common(cmd, o);
    cmd->callback([&o, opts, &action]() {
      action = [&o, opts]() { return run_sieve(o, (*opts)[0], (*opts)[1], (*opts)[2]); };
    });
  }

  // gaps
  {
    auto* cmd = app.add_subcommand("gaps", "emit gap records over an index range");
    auto opts = std::make_shared<std::array<std::string, 2>>();
    (*opts)[0] = "1";
    cmd->add_option("--from", (*opts)[0], "first index (default 1)");
    cmd->add_option("--to", (*opts)[1], "last index")->required();
    add_common(cmd, o);
    cmd->callback([&o, opts, &action]() {
      action = [&o, opts]() { return run_gaps(o, (*opts)[0], (*opts)[1]); };
    });
  }

  // xi
  {
    auto* cmd = app.add_subcommand("xi", "scan g_n < Q_n for an auxiliary sequence");
    auto opts = std::make_shared<std::array<std::string, 4>>();
    auto density = std::make_shared<bool>(false);
    (*opts)[1] = "1";
    cmd->add_option("--seq", (*opts)[0], "sequence: builtin name, expression, or @file.csv")
        ->required();
    cmd->add_option("--from", (*opts)[1], "first index (default 1)");
    cmd->add_option("--to", (*opts)[2], "last index")->required();
    cmd->add_flag("--density", *density, "emit per-block verdict counts over [1, --to]");
    (*opts)[3] = "1000";
    cmd->add_option("--block", (*opts)[3], "density block size (default 1000)");
    add_common(cmd, o);
    cmd->callback([&o, opts, density, &action]() {
      action = [&o, opts, density]() {
        return run_xi(o, (*opts)[0], (*opts)[1], (*opts)[2], *density, (*opts)[3]);
      };
    });
  }

  // verify
  {
    auto* ver = app.add_subcommand("verify", "check concrete prime and gap inequalities");
    ver->require_subcommand(1);
    {
      auto* cmd = ver->add_subcommand("firoozbakht", "p_{n+1}^{1/(n+1)} < p_n^{1/n}");
      auto limit = std::make_shared<std::string>();
      cmd->add_option("--limit", *limit, "check all n with p_{n+1} <= limit")->required();
      add_common(cmd, o);
      cmd->callback([&o, limit, &action]() {
        action = [&o, limit]() { return run_verify_firoozbakht(o, *limit); };
      });
    }
    {
      auto* cmd = ver->add_subcommand("rosser", "n ln n < p_n");
      auto n = std::make_shared<std::string>();
      cmd->add_option("--n", *n, "check n in [1, N]")->required();
      add_common(cmd, o);
      cmd->callback([&o, n, &action]() {
        action = [&o, n]() { return run_verify_rosser(o, *n); };
      });
    }
    struct BoundCmd {
      const char* cli;
      const char* name;
      const char* help;
      u64 min_from;
    };
    for (BoundCmd bc : {BoundCmd{"two-over-n", "two_over_n", "g_n n < 2 p_n", 1},
                        BoundCmd{"kourbatov", "kourbatov",
                                 "g_n < ln(p_n)^2 - ln(p_n) - 1 (n >= 10)", 10},
                        BoundCmd{"sharp", "sharp", "g_n < (n+1)ln(n+1) - n ln n + 1", 1}}) {
      auto* cmd = ver->add_subcommand(bc.cli, bc.help);
      auto opts = std::make_shared<std::array<std::string, 2>>();
      (*opts)[0] = bc.min_from == 1 ? "1" : "10";
      cmd->add_option("--from", (*opts)[0], "first index");
      cmd->add_option("--to", (*opts)[1], "last index")->required();
      add_common(cmd, o);
      std::string name = bc.name;
      u64 min_from = bc.min_from;
      cmd->callback([&o, opts, name, min_from, &action]() {
        action = [&o, opts, name, min_from]() {
          return run_verify_bound(o, name, (*opts)[0], (*opts)[1], min_from);
        };
      });
    }
    {
      auto* cmd = ver->add_subcommand("compare-bounds",
                                      "sharp rhs vs ln(p)^2 - ln(p) - b per index");
      auto opts = std::make_shared<std::array<std::string, 3>>();
      (*opts)[0] = "10";
      (*opts)[2] = "1";
      cmd->add_option("--from", (*opts)[0], "first index (default 10)");
      cmd->add_option("--to", (*opts)[1], "last index")->required();
      cmd->add_option("--b", (*opts)[2], "parameter b >= 1 (default 1)");
      add_common(cmd, o);
      cmd->callback([&o, opts, &action]() {
        action = [&o, opts]() {
          return run_verify_compare(o, (*opts)[0], (*opts)[1], (*opts)[2]);
        };
      });
    }
  }

  // kummer
  {
    auto* kum = app.add_subcommand("kummer", "summability engine over positive series");
    kum->require_subcommand(1);
    {
      auto* cmd = kum->add_subcommand("scan", "check b_n (a_n/a_{n+1}) - b_{n+1} >= c");
      auto opts = std::make_shared<std::array<std::string, 6>>();
      auto recip = std::make_shared<bool>(false);
      (*opts)[2] = "1";
      (*opts)[3] = "1";
      (*opts)[5] = "1024";
      cmd->add_option("--a", (*opts)[0],
                      "series terms: reciprocal_primes|harmonic|squares|geometric:R|"
                      "expression|@file.csv")
          ->required();
      cmd->add_option("--b", (*opts)[1], "multiplier sequence (or 'random')")->required();
      cmd->add_flag("--reciprocal", *recip, "use 1/a_n as the terms");
      cmd->add_option("--n0", (*opts)[2], "scan over (n0, N] (default 1)");
      cmd->add_option("--c", (*opts)[3], "required lower bound c > 0 (default 1)");
      cmd->add_option("--to", (*opts)[4], "scan end N")->required();
      cmd->add_option("--b-len", (*opts)[5], "length of a generated random b");
      add_common(cmd, o);
      cmd->callback([&o, opts, recip, &action]() {
        action = [&o, opts, recip]() {
          return run_kummer_scan(o, (*opts)[0], (*opts)[1], *recip, (*opts)[2], (*opts)[3],
                                 (*opts)[4], (*opts)[5]);
        };
      });
    }
    {
      auto* cmd = kum->add_subcommand(
          "witness", "smallest n with b_n a_{n+1} - b_{n+1} a_n < a_n");
      auto opts = std::make_shared<std::array<std::string, 5>>();
      (*opts)[2] = "1";
      (*opts)[4] = "1024";
      cmd->add_option("--a", (*opts)[0], "series (see scan)")->required();
      cmd->add_option("--b", (*opts)[1], "multiplier sequence (or 'random')")->required();
      cmd->add_option("--from", (*opts)[2], "first candidate (default 1)");
      cmd->add_option("--to", (*opts)[3], "last candidate")->required();
      cmd->add_option("--b-len", (*opts)[4], "length of a generated random b");
      add_common(cmd, o);
      cmd->callback([&o, opts, &action]() {
        action = [&o, opts]() {
          return run_kummer_witness(o, (*opts)[0], (*opts)[1], (*opts)[2], (*opts)[3],
                                    (*opts)[4]);
        };
      });
    }
    {
      auto* cmd = kum->add_subcommand("canonical", "b_n = (M - sum_{j<=n} a_j)/a_n");
      auto opts = std::make_shared<std::array<std::string, 3>>();
      cmd->add_option("--a", (*opts)[0], "series (see scan)")->required();
      cmd->add_option("--m", (*opts)[1], "target sum M (rational or decimal)")->required();
      cmd->add_option("--n", (*opts)[2], "index (table up to n written to --out)")
          ->required();
      add_common(cmd, o);
      cmd->callback([&o, opts, &action]() {
        action = [&o, opts]() {
          return run_kummer_canonical(o, (*opts)[0], (*opts)[1], (*opts)[2]);
        };
      });
    }
  }

  // liminf
  {
    auto* cmd = app.add_subcommand("liminf", "running min/sum of a gap metric");
    auto opts = std::make_shared<std::array<std::string, 4>>();
    auto eps = std::make_shared<double>(0.1);
    (*opts)[3] = "2";
    cmd->add_option("--metric", (*opts)[0],
                    "gap_over_p_scaled|gap_over_log|gap_over_log_eps|gap_over_gpy|"
                    "firoozbakht_ratio|reciprocal_prime_partial_sum|hyp_n_u|hyp_gpy_u")
        ->required();
    cmd->add_option("--eps", *eps, "epsilon for gap_over_log_eps (default 0.1)");
    cmd->add_option("--seq", (*opts)[1], "sequence for hyp_* metrics");
    cmd->add_option("--n", (*opts)[2], "scan end")->required();
    cmd->add_option("--checkpoint-factor", (*opts)[3],
                    "geometric checkpoint spacing (default 2)");
    add_common(cmd, o);
    cmd->callback([&o, opts, eps, &action]() {
      action = [&o, opts, eps]() {
        return run_liminf(o, (*opts)[0], *eps, (*opts)[1], (*opts)[2], (*opts)[3]);
      };
    });
  }

  // recurrence
  {
    auto* cmd = app.add_subcommand("recurrence", "iterate the equality recurrence");
    auto opts = std::make_shared<std::array<std::string, 3>>();
    (*opts)[2] = "1000000";
    cmd->add_option("--seed", (*opts)[0], "q_1,q_2 (rationals or decimals)")->required();
    cmd->add_option("--n", (*opts)[1], "iterate to q_N")->required();
    cmd->add_option("--bit-budget", (*opts)[2],
                    "max bits per rational before a typed stop (default 1e6)");
    add_common(cmd, o);
    cmd->callback([&o, opts, &action]() {
      action = [&o, opts]() { return run_recurrence(o, (*opts)[0], (*opts)[1], (*opts)[2]); };
    });
  }

  // classical
  {
    auto* cmd = app.add_subcommand("classical", "Rosser scan plus PNT checkpoints");
    auto n = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "check n in [1, N]")->required();
    add_common(cmd, o);
    cmd->callback([&o, n, &action]() {
      action = [&o, n]() { return run_classical(o, *n); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const gf::ParseError& e) {
    std::cerr << "gapforge: expression error: " << e.what() << "\n";
    return 2;
  } catch (const gf::PositivityError& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return 2;
  } catch (const gf::BitBudgetError& e) {
    std::cerr << "gapforge: " << e.what() << " (raise --bit-budget or lower --n)\n";
    return 2;
  } catch (const gf::Error& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return 2;
  }
}
