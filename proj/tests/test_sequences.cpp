#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gapforge/sequences.hpp"

using namespace gapforge;

namespace {
BigRat rat(long num, long den = 1) { return BigRat(BigInt(num), BigInt(den)); }

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& body) {
    path = "seq_test_tmp.csv";
    std::ofstream f(path);
    f << body;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("identity sequence has u_n = 2/n exactly") {
  PrimeTable primes;
  auto id = AuxSequenceSpec::builtin(BuiltinSeq::IdentityN);
  for (u64 n : {u64(1), u64(4), u64(10), u64(1000)}) {
    auto u = eval_u(id, n, primes);
    REQUIRE(u.is_exact());
    CHECK(u.rational() == rat(2, n));
  }
  auto Q = eval_Q(id, 5, primes);
  REQUIRE(Q.is_exact());
  CHECK(Q.rational() == rat(22, 5));
}

TEST_CASE("n log n sequence matches its closed form") {
  PrimeTable primes;
  auto spec = AuxSequenceSpec::builtin("n_log_n");
  auto u = eval_u(spec, 10, primes);
  REQUIRE_FALSE(u.is_exact());
  double expected = (11 * std::log(11.0) - 10 * std::log(10.0) + 1) / (10 * std::log(10.0));
  CHECK(u.value() == Catch::Approx(expected).epsilon(1e-13));
  CHECK(u.value() == Catch::Approx(0.18896140186437273).epsilon(1e-13));
}

TEST_CASE("builtin lookups and labels") {
  CHECK(builtin_from_name("identity_n").has_value());
  CHECK(builtin_from_name("n_log_n").has_value());
  CHECK(builtin_from_name("firoozbakht_weight").has_value());
  CHECK(builtin_from_name("twin_piecewise").has_value());
  CHECK_FALSE(builtin_from_name("no_such_sequence").has_value());
  CHECK_THROWS_AS(AuxSequenceSpec::builtin("no_such_sequence"), DomainError);
  CHECK(AuxSequenceSpec::builtin(BuiltinSeq::TwinPiecewise).label() == "twin_piecewise");
}

TEST_CASE("the canonical kummer multiplier is not a named builtin") {
  CHECK_THROWS_AS(AuxSequenceSpec::expression("kummer_canonical"), ParseError);
  CHECK_THROWS_AS(AuxSequenceSpec::builtin("kummer_canonical"), DomainError);
}

TEST_CASE("firoozbakht weight at n=2") {
  PrimeTable primes;
  auto spec = AuxSequenceSpec::builtin("firoozbakht_weight");
  auto q2 = eval_q(spec, 2, primes);
  // p_2^(1/2) * ln 2 = sqrt(3) ln 2
  CHECK(q2.value() == Catch::Approx(std::sqrt(3.0) * std::log(2.0)).epsilon(1e-14));
  CHECK(q2.value() == Catch::Approx(1.2005661338529437).epsilon(1e-14));
}

TEST_CASE("twin piecewise values at n=10") {
  PrimeTable primes;
  auto spec = AuxSequenceSpec::builtin("twin_piecewise");
  auto u = eval_u(spec, 10, primes);
  CHECK(u.value() == Catch::Approx(0.08482213334855022).epsilon(1e-13));
  auto Q = eval_Q(spec, 10, primes);
  CHECK(Q.value() == Catch::Approx(2.4598418671079565).epsilon(1e-13));
}

TEST_CASE("twin piecewise Q hugs 2 at large even n") {
  PrimeTable primes;
  auto spec = AuxSequenceSpec::builtin("twin_piecewise");
  for (u64 n = 10'000; n <= 10'040; n += 2) {
    auto Q = eval_Q(spec, n, primes);
    CHECK(std::fabs(Q.value() - 2.0) < 0.5);
  }
}

TEST_CASE("Q is p times u for every kind of sequence") {
  PrimeTable primes;
  std::vector<AuxSequenceSpec> specs;
  specs.push_back(AuxSequenceSpec::builtin(BuiltinSeq::IdentityN));
  specs.push_back(AuxSequenceSpec::builtin("n_log_n"));
  specs.push_back(AuxSequenceSpec::expression("n^2+1"));
  for (const auto& spec : specs) {
    for (u64 n : {u64(2), u64(7), u64(50)}) {
      auto u = eval_u(spec, n, primes);
      auto Q = eval_Q(spec, n, primes);
      CHECK(Q.value() ==
            Catch::Approx(static_cast<double>(primes.p(n)) * u.value()).epsilon(1e-12));
    }
  }
}

TEST_CASE("expression sequences clip their own domain") {
  PrimeTable primes;
  auto spec = AuxSequenceSpec::expression("n-5");
  CHECK_THROWS_AS(eval_q(spec, 5, primes), PositivityError);
  CHECK_THROWS_AS(eval_q(spec, 3, primes), PositivityError);
  CHECK(eval_q(spec, 6, primes).rational() == 1);
}

TEST_CASE("first valid index per kind") {
  CHECK(AuxSequenceSpec::builtin(BuiltinSeq::IdentityN).first_valid_index() == 1);
  CHECK(AuxSequenceSpec::builtin(BuiltinSeq::NLogN).first_valid_index() == 2);
  CHECK(AuxSequenceSpec::builtin(BuiltinSeq::TwinPiecewise).first_valid_index() == 2);
  CHECK(AuxSequenceSpec::expression("n").first_valid_index() == 1);
}

TEST_CASE("tabulated csv round trip") {
  TempCsv file("n,q_n\n1,1\n2,3/2\n3,2.5\n4,7\n");
  auto spec = AuxSequenceSpec::tabulated_csv(file.path);
  CHECK(spec.first_valid_index() == 1);
  REQUIRE(spec.last_valid_index().has_value());
  CHECK(*spec.last_valid_index() == 4);
  PrimeTable primes;
  CHECK(eval_q(spec, 2, primes).rational() == rat(3, 2));
  CHECK(eval_q(spec, 3, primes).rational() == rat(5, 2));
  auto u = eval_u(spec, 1, primes);
  REQUIRE(u.is_exact());
  CHECK(u.rational() == rat(3, 2));  // (3/2 - 1 + 1) / 1
}

TEST_CASE("tabulated csv accepts headerless files") {
  TempCsv file("1,2\n2,4\n3,8\n");
  auto table = read_tabulated_csv(file.path);
  CHECK(table.first_n == 1);
  CHECK(table.values.size() == 3);
  CHECK(table.values[2] == rat(8));
}

TEST_CASE("tabulated csv rejects malformed input") {
  {
    TempCsv file("n,q_n\n1,1\n3,2\n");  // skips index 2
    CHECK_THROWS_AS(read_tabulated_csv(file.path), FileError);
  }
  {
    TempCsv file("n,q_n\n");  // no rows
    CHECK_THROWS_AS(read_tabulated_csv(file.path), FileError);
  }
  CHECK_THROWS_AS(read_tabulated_csv("does_not_exist.csv"), FileError);
}

TEST_CASE("tabulated access outside the table is a domain error") {
  TabulatedSeq t;
  t.first_n = 1;
  t.values = {rat(1), rat(2)};
  auto spec = AuxSequenceSpec::tabulated(std::move(t));
  PrimeTable primes;
  CHECK_THROWS_AS(eval_q(spec, 3, primes), DomainError);
  CHECK_THROWS_AS(eval_u(spec, 2, primes), DomainError);  // needs q_3
}
