#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gapforge/io.hpp"
#include "gapforge/sequences.hpp"
#include "gapforge/xi.hpp"

using namespace gapforge;

TEST_CASE("doubles print with full round trip precision") {
  for (double v : {0.1, 1.0 / 3.0, 2.0023501514502926, 0.07696104113612856, 1e-300}) {
    std::string s = fmt_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(fmt_double(0.25) == "0.25");
  CHECK(fmt_double(4) == "4");
}

TEST_CASE("gap rows survive a csv round trip") {
  PrimeTable primes;
  std::ostringstream os;
  io::write_gap_header(os, io::Format::Csv);
  auto rows = gap_stream(primes, 1, 50);
  for (const auto& r : rows) io::write_gap_row(os, io::Format::Csv, r);

  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,p_n,p_next,g");
  std::size_t i = 0;
  while (std::getline(in, line)) {
    REQUIRE(i < rows.size());
    u64 n, p, p_next, g;
    REQUIRE(std::sscanf(line.c_str(), "%llu,%llu,%llu,%llu",
                        (unsigned long long*)&n, (unsigned long long*)&p,
                        (unsigned long long*)&p_next, (unsigned long long*)&g) == 4);
    CHECK(GapRecord{n, p, p_next, g} == rows[i]);
    ++i;
  }
  CHECK(i == rows.size());
}

TEST_CASE("jsonl rows carry the same fields as csv") {
  PrimeTable primes;
  std::ostringstream os;
  auto rec = xi_record(AuxSequenceSpec::builtin(BuiltinSeq::IdentityN), 5, primes, {});
  io::write_xi_row(os, io::Format::Jsonl, rec);
  std::string line = os.str();
  CHECK(line.find("\"n\":5") != std::string::npos);
  CHECK(line.find("\"p_n\":11") != std::string::npos);
  CHECK(line.find("\"p_next\":13") != std::string::npos);
  CHECK(line.find("\"g\":2") != std::string::npos);
  CHECK(line.find("\"verdict\":\"holds\"") != std::string::npos);
  CHECK(line.find("\"exact\":true") != std::string::npos);
}

TEST_CASE("output sink writes files and stdout") {
  const char* path = "io_test_tmp.csv";
  {
    io::OutputSink sink(path);
    sink.os() << "hello\n";
    sink.flush();
  }
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "hello");
  std::remove(path);

  io::OutputSink out("-");
  CHECK(&out.os() == &std::cout);
}

TEST_CASE("format parsing") {
  CHECK(io::parse_format("csv") == io::Format::Csv);
  CHECK(io::parse_format("jsonl") == io::Format::Jsonl);
  CHECK_THROWS_AS(io::parse_format("xml"), DomainError);
}

TEST_CASE("json strings are escaped") {
  CHECK(io::json_escape("plain") == "plain");
  CHECK(io::json_escape("a\"b") == "a\\\"b");
  CHECK(io::json_escape("a\\b") == "a\\\\b");
  CHECK(io::json_escape("a\nb") == "a\\nb");
}

TEST_CASE("unwritable paths raise file errors") {
  CHECK_THROWS_AS(io::OutputSink("/nonexistent_dir_zz/file.csv"), FileError);
}
