#include <catch2/catch_amalgamated.hpp>

#include "gapforge/sieve.hpp"
#include "oracle.hpp"

using namespace gapforge;

TEST_CASE("stream matches trial division up to 10^4") {
  auto expected = oracle::primes_by_trial_division(10'000);
  PrimeStream stream(10'000);
  auto got = stream.collect();
  REQUIRE(got == expected);
}

TEST_CASE("stream matches a plain sieve up to 10^5") {
  auto expected = oracle::primes_by_plain_sieve(100'000);
  auto got = PrimeStream(100'000).collect();
  REQUIRE(got == expected);
}

TEST_CASE("prime counts at decade marks") {
  CHECK(prime_count(10) == 4);
  CHECK(prime_count(100) == 25);
  CHECK(prime_count(1'000) == 168);
  CHECK(prime_count(100'000) == 9'592);
  CHECK(prime_count(1'000'000) == 78'498);
}

TEST_CASE("indexing starts at n=1 and counts correctly") {
  PrimeStream stream(30);
  std::vector<std::pair<u64, u64>> got;
  while (auto ip = stream.next()) got.emplace_back(ip->n, ip->p);
  std::vector<std::pair<u64, u64>> expected = {
      {1, 2}, {2, 3}, {3, 5}, {4, 7}, {5, 11}, {6, 13}, {7, 17}, {8, 19}, {9, 23}, {10, 29}};
  REQUIRE(got == expected);
}

TEST_CASE("output does not depend on segment size or worker count") {
  auto baseline = PrimeStream(200'000).collect();
  for (u64 seg : {u64(1024), u64(4096), u64(1) << 18}) {
    for (unsigned workers : {1u, 2u, 8u}) {
      SieveConfig cfg;
      cfg.limit = 200'000;
      cfg.segment_size = seg;
      cfg.parallelism = workers;
      auto got = PrimeStream(200'000, cfg).collect();
      REQUIRE(got == baseline);
    }
  }
}

TEST_CASE("nth prime and prime count invert each other") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(5) == 11);
  CHECK(nth_prime(100) == 541);
  CHECK(nth_prime(1'000) == 7'919);
  CHECK(nth_prime(9'592) == 99'991);
  for (u64 n : {u64(1), u64(17), u64(100), u64(1234)}) {
    u64 p = nth_prime(n);
    CHECK(prime_count(p) == n);
    CHECK(prime_count(p - 1) == n - 1);
  }
}

TEST_CASE("prime table grows on demand and stays consistent") {
  PrimeTable table;
  table.ensure_count(1);
  CHECK(table.p(1) == 2);
  CHECK(table.size() >= 1);
  table.ensure_count(25);
  CHECK(table.p(25) == 97);
  table.ensure_count(10'000);
  auto expected = oracle::primes_by_plain_sieve(104'729);
  REQUIRE(expected.size() == 10'000);
  for (u64 n = 1; n <= 10'000; n += 97) CHECK(table.p(n) == expected[n - 1]);
  CHECK(table.p(10'000) == 104'729);
}

TEST_CASE("tiny limits") {
  CHECK_THROWS_AS(PrimeStream(0), EmptyRangeError);
  CHECK_THROWS_AS(PrimeStream(1), EmptyRangeError);
  CHECK(PrimeStream(2).collect() == std::vector<u64>{2});
  CHECK(PrimeStream(3).collect() == std::vector<u64>{2, 3});
  CHECK(prime_count(0) == 0);
  CHECK(prime_count(2) == 1);
}

TEST_CASE("config validation") {
  SieveConfig cfg;
  cfg.segment_size = 512;
  CHECK_THROWS_AS(PrimeStream(100, cfg), DomainError);
  CHECK_THROWS_AS(nth_prime(0), DomainError);
}
