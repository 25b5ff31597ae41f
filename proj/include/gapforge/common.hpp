#pragma once

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

namespace gapforge {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class EmptyRangeError : public Error {
public:
  using Error::Error;
};

// Syntax error in the sequence-expression grammar; position is a 0-based
// byte offset into the source text.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// A sequence value that must be positive was not; carries the offending index.
class PositivityError : public Error {
public:
  PositivityError(const std::string& what_seq, u64 index)
      : Error(what_seq + " is not positive at n=" + std::to_string(index)),
        index_(index) {}
  u64 index() const { return index_; }

private:
  u64 index_;
};

// Exact-rational state outgrew the configured bit budget.
class BitBudgetError : public Error {
public:
  BitBudgetError(u64 index, u64 bits, u64 budget)
      : Error("exact rational exceeds bit budget at n=" + std::to_string(index) +
              " (" + std::to_string(bits) + " > " + std::to_string(budget) + " bits)"),
        index_(index) {}
  u64 index() const { return index_; }

private:
  u64 index_;
};

class FileError : public Error {
public:
  using Error::Error;
};

inline std::string strf(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

// 17 significant digits: enough for double round-trip, used by every writer
// so that identical runs produce identical bytes.
inline std::string fmt_double(double v) { return strf("%.17g", v); }

}  // namespace gapforge
