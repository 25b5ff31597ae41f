#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "gapforge/expr.hpp"
#include "gapforge/sieve.hpp"

using namespace gapforge;

namespace {
EvalValue eval_at(const std::string& text, u64 n, PrimeTable& primes) {
  auto e = parse_sequence_expr(text);
  ExprContext ctx{n, &primes};
  return eval_expr(*e, ctx);
}
}  // namespace

TEST_CASE("basic arithmetic and precedence") {
  PrimeTable primes;
  CHECK(eval_at("n", 7, primes).rational() == 7);
  CHECK(eval_at("2*n+1", 5, primes).rational() == 11);
  CHECK(eval_at("2*(n+1)", 5, primes).rational() == 12);
  CHECK(eval_at("n^2", 9, primes).rational() == 81);
  CHECK(eval_at("n/2", 7, primes).rational() == BigRat(BigInt(7), BigInt(2)));
  CHECK(eval_at("1+2*3^2", 1, primes).rational() == 19);
}

TEST_CASE("power is right associative") {
  PrimeTable primes;
  // 2^(3^2) = 512, not (2^3)^2 = 64
  CHECK(eval_at("2^3^2", 1, primes).rational() == 512);
}

TEST_CASE("prime lookup inside expressions") {
  PrimeTable primes;
  CHECK(eval_at("p(n)", 5, primes).rational() == 11);
  CHECK(eval_at("p(n+1)-p(n)", 4, primes).rational() == 4);
  CHECK(eval_at("p(2*n)", 3, primes).rational() == 13);
}

TEST_CASE("prime lookup rejects non-integer arguments") {
  PrimeTable primes;
  CHECK_THROWS_AS(eval_at("p(n/2)", 5, primes), DomainError);
  CHECK_THROWS_AS(eval_at("p(0)", 3, primes), DomainError);
}

TEST_CASE("ln and if_even evaluate as documented") {
  PrimeTable primes;
  auto v = eval_at("n*ln(n)", 10, primes);
  REQUIRE_FALSE(v.is_exact());
  CHECK(v.value() == Catch::Approx(10.0 * std::log(10.0)).epsilon(1e-14));

  auto even = eval_at("if_even(n*ln(n),(n-1)*ln(n))", 10, primes);
  CHECK(even.value() == Catch::Approx(10.0 * std::log(10.0)).epsilon(1e-14));
  auto odd = eval_at("if_even(n*ln(n),(n-1)*ln(n))", 11, primes);
  CHECK(odd.value() == Catch::Approx(10.0 * std::log(11.0)).epsilon(1e-14));
}

TEST_CASE("if_even only evaluates the selected branch") {
  PrimeTable primes;
  // the unselected branch divides by zero but must not be touched
  CHECK(eval_at("if_even(n,1/(n-2))", 2, primes).rational() == 2);
  CHECK(eval_at("if_even(1/(n-3),n)", 3, primes).rational() == 3);
  // while the selected branch's errors do propagate
  CHECK_THROWS_AS(eval_at("if_even(1/(n-4),n)", 4, primes), DomainError);
}

TEST_CASE("decimal literals are exact rationals") {
  PrimeTable primes;
  CHECK(eval_at("0.5", 1, primes).rational() == BigRat(BigInt(1), BigInt(2)));
  CHECK(eval_at("1.25*4", 1, primes).rational() == 5);
  CHECK(eval_at("0.1+0.2", 1, primes).rational() == BigRat(BigInt(3), BigInt(10)));
}

TEST_CASE("whitespace is insignificant") {
  auto a = parse_sequence_expr("n*ln(n)");
  auto b = parse_sequence_expr("  n * ln( n )  ");
  CHECK(structurally_equal(*a, *b));
}

TEST_CASE("printing and reparsing is a fixed point") {
  for (const char* text :
       {"n", "2*n+1", "n^2/(n+1)", "if_even(n*ln(n),(n-1)*ln(n))", "p(n+1)-p(n)",
        "ln(ln(n))", "0.5*n^3", "2^3^2", "1/(n-2)"}) {
    auto parsed = parse_sequence_expr(text);
    auto printed = to_string(*parsed);
    auto reparsed = parse_sequence_expr(printed);
    INFO(text << " -> " << printed);
    CHECK(structurally_equal(*parsed, *reparsed));
    CHECK(to_string(*reparsed) == printed);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_sequence_expr("n +");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_sequence_expr(""), ParseError);
  CHECK_THROWS_AS(parse_sequence_expr("foo(n)"), ParseError);
  CHECK_THROWS_AS(parse_sequence_expr("n)"), ParseError);
  CHECK_THROWS_AS(parse_sequence_expr("(n"), ParseError);
  CHECK_THROWS_AS(parse_sequence_expr("ln n"), ParseError);
  CHECK_THROWS_WITH(parse_sequence_expr("-n"),
                    Catch::Matchers::ContainsSubstring("0-e"));
}
