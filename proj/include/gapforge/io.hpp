#pragma once

#include <fstream>
#include <iostream>
#include <ostream>
#include <string>

#include "gapforge/bounds.hpp"
#include "gapforge/gaps.hpp"
#include "gapforge/recurrence.hpp"
#include "gapforge/xi.hpp"

namespace gapforge::io {

enum class Format { Csv, Jsonl };

inline Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "jsonl") return Format::Jsonl;
  throw DomainError("unknown format '" + std::string(text) + "' (expected csv or jsonl)");
}

// Writes to a file, or to stdout for "-" / empty.
class OutputSink {
public:
  explicit OutputSink(const std::string& path) {
    if (path.empty() || path == "-") {
      os_ = &std::cout;
      return;
    }
    file_.open(path);
    if (!file_) throw FileError("cannot open " + path + " for writing");
    os_ = &file_;
  }

  std::ostream& os() { return *os_; }

  void flush() { os_->flush(); }

private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) out += strf("\\u%04x", c);
        else out += c;
    }
  }
  return out;
}

inline const char* bool_text(bool b) { return b ? "true" : "false"; }

// ---- sieve: n,p_n ----

inline void write_prime_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,p_n\n";
}

inline void write_prime_row(std::ostream& os, Format f, const IndexedPrime& r) {
  if (f == Format::Csv) os << r.n << ',' << r.p << '\n';
  else os << "{\"n\":" << r.n << ",\"p_n\":" << r.p << "}\n";
}

// ---- gaps: n,p_n,p_next,g ----

inline void write_gap_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,p_n,p_next,g\n";
}

inline void write_gap_row(std::ostream& os, Format f, const GapRecord& r) {
  if (f == Format::Csv) {
    os << r.n << ',' << r.p << ',' << r.p_next << ',' << r.g << '\n';
  } else {
    os << "{\"n\":" << r.n << ",\"p_n\":" << r.p << ",\"p_next\":" << r.p_next
       << ",\"g\":" << r.g << "}\n";
  }
}

// ---- xi: n,p_n,p_next,g,Q,verdict,ratio_verdict,exact,margin ----

inline void write_xi_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,p_n,p_next,g,Q,verdict,ratio_verdict,exact,margin\n";
}

inline void write_xi_row(std::ostream& os, Format f, const XiRecord& r) {
  if (f == Format::Csv) {
    os << r.n << ',' << r.p << ',' << r.p_next << ',' << r.g << ','
       << fmt_double(r.Q.value()) << ',' << to_string(r.verdict.state) << ','
       << to_string(r.ratio_verdict.state) << ',' << bool_text(r.verdict.exact) << ','
       << fmt_double(r.verdict.margin) << '\n';
  } else {
    os << "{\"n\":" << r.n << ",\"p_n\":" << r.p << ",\"p_next\":" << r.p_next
       << ",\"g\":" << r.g << ",\"Q\":" << fmt_double(r.Q.value()) << ",\"verdict\":\""
       << to_string(r.verdict.state) << "\",\"ratio_verdict\":\""
       << to_string(r.ratio_verdict.state) << "\",\"exact\":" << bool_text(r.verdict.exact)
       << ",\"margin\":" << fmt_double(r.verdict.margin) << "}\n";
  }
}

// ---- bounds: n,g,rhs,verdict ----

inline void write_bound_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,g,rhs,verdict\n";
}

inline void write_bound_row(std::ostream& os, Format f, const BoundReport& r) {
  if (f == Format::Csv) {
    os << r.n << ',' << r.g << ',' << fmt_double(r.rhs.value()) << ','
       << to_string(r.verdict.state) << '\n';
  } else {
    os << "{\"n\":" << r.n << ",\"g\":" << r.g << ",\"rhs\":" << fmt_double(r.rhs.value())
       << ",\"verdict\":\"" << to_string(r.verdict.state) << "\"}\n";
  }
}

// ---- liminf checkpoints: n,metric,value,running_min,argmin ----

inline void write_liminf_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,metric,value,running_min,argmin\n";
}

inline void write_liminf_row(std::ostream& os, Format f, std::string_view metric,
                             const LiminfRow& r) {
  if (f == Format::Csv) {
    os << r.n << ',' << metric << ',' << fmt_double(r.value) << ',' << fmt_double(r.stat)
       << ',' << r.arg << '\n';
  } else {
    os << "{\"n\":" << r.n << ",\"metric\":\"" << json_escape(metric)
       << "\",\"value\":" << fmt_double(r.value) << ",\"running_min\":" << fmt_double(r.stat)
       << ",\"argmin\":" << r.arg << "}\n";
  }
}

// ---- bound comparison: n,sharp_rhs,kourbatov_rhs,sharp_smaller ----

inline void write_compare_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,sharp_rhs,kourbatov_rhs,sharp_smaller\n";
}

inline void write_compare_row(std::ostream& os, Format f, const ComparisonRow& r) {
  if (f == Format::Csv) {
    os << r.n << ',' << fmt_double(r.sharp_rhs) << ',' << fmt_double(r.kourbatov_rhs) << ','
       << bool_text(r.sharp_smaller) << '\n';
  } else {
    os << "{\"n\":" << r.n << ",\"sharp_rhs\":" << fmt_double(r.sharp_rhs)
       << ",\"kourbatov_rhs\":" << fmt_double(r.kourbatov_rhs)
       << ",\"sharp_smaller\":" << bool_text(r.sharp_smaller) << "}\n";
  }
}

// ---- recurrence: n,q_n,Q_n,status (rationals as num/den) ----

inline void write_recurrence_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "n,q_n,Q_n,status\n";
}

inline void write_recurrence_row(std::ostream& os, Format f, u64 n, const BigRat& q,
                                 const BigRat* Q, std::string_view status) {
  if (f == Format::Csv) {
    os << n << ',' << rat_to_string(q) << ',' << (Q ? rat_to_string(*Q) : std::string())
       << ',' << status << '\n';
  } else {
    os << "{\"n\":" << n << ",\"q_n\":\"" << rat_to_string(q) << "\",\"Q_n\":";
    if (Q) os << '"' << rat_to_string(*Q) << '"';
    else os << "null";
    os << ",\"status\":\"" << status << "\"}\n";
  }
}

inline void write_recurrence_run(std::ostream& os, Format f, const RecurrenceRun& run) {
  write_recurrence_header(os, f);
  for (std::size_t i = 0; i < run.values.size(); ++i) {
    u64 n = i + 1;
    const BigRat* Q = i < run.Q_trace.size() ? &run.Q_trace[i] : nullptr;
    bool last = i + 1 == run.values.size();
    write_recurrence_row(os, f, n, run.values[i], Q,
                         last ? to_string(run.status) : to_string(RunStatus::Running));
  }
}

// ---- density blocks: block_lo,block_hi,holds,fails,indeterminate ----

inline void write_density_header(std::ostream& os, Format f) {
  if (f == Format::Csv) os << "block_lo,block_hi,holds,fails,indeterminate\n";
}

inline void write_density_row(std::ostream& os, Format f, const DensityBlock& b) {
  if (f == Format::Csv) {
    os << b.lo << ',' << b.hi << ',' << b.holds << ',' << b.fails << ','
       << b.indeterminate << '\n';
  } else {
    os << "{\"block_lo\":" << b.lo << ",\"block_hi\":" << b.hi << ",\"holds\":" << b.holds
       << ",\"fails\":" << b.fails << ",\"indeterminate\":" << b.indeterminate << "}\n";
  }
}

}  // namespace gapforge::io
