#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "gapforge/eval.hpp"
#include "gapforge/sieve.hpp"

namespace gapforge {

// AST for the sequence expression language:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?                      ('^' right-associative)
//   base   := number | 'n' | 'p(' expr ')' | 'ln(' expr ')'
//           | 'if_even(' expr ',' expr ')' | '(' expr ')'
//
// Numbers are integer or decimal literals (kept exact). Unary minus is not
// part of the grammar; write 0-e.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Var, Prime, Ln, IfEven, Add, Sub, Mul, Div, Pow };

  Kind kind;
  BigRat number;       // Kind::Number
  std::string lexeme;  // original spelling of a number, kept for printing
  ExprPtr a, b;
};

namespace detail {

inline ExprPtr make_node(ExprNode::Kind kind, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", 0);
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError(strf("unexpected character '%c'", text_[pos_]), pos_);
    return e;
  }

private:
  ExprPtr expr() {
    ExprPtr left = term();
    for (;;) {
      skip_ws();
      if (accept('+')) left = make_node(ExprNode::Kind::Add, left, term());
      else if (accept('-')) left = make_node(ExprNode::Kind::Sub, left, term());
      else return left;
    }
  }

  ExprPtr term() {
    ExprPtr left = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) left = make_node(ExprNode::Kind::Mul, left, factor());
      else if (accept('/')) left = make_node(ExprNode::Kind::Div, left, factor());
      else return left;
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    skip_ws();
    if (accept('^')) return make_node(ExprNode::Kind::Pow, b, factor());
    return b;
  }

  ExprPtr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected expression", pos_);
    char c = text_[pos_];
    if (c >= '0' && c <= '9') return number();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (c == '-')
      throw ParseError("unary minus is not supported; write 0-e", pos_);
    if (is_ident_char(c)) return identifier();
    throw ParseError(strf("unexpected character '%c'", c), pos_);
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t frac = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      if (pos_ == frac) throw ParseError("expected digits after decimal point", pos_);
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Number;
    n->lexeme = std::string(text_.substr(start, pos_ - start));
    n->number = rat_from_decimal(n->lexeme);
    return n;
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "n") return make_node(ExprNode::Kind::Var);
    if (name == "p") return unary(ExprNode::Kind::Prime, start);
    if (name == "ln") return unary(ExprNode::Kind::Ln, start);
    if (name == "if_even") {
      expect('(');
      ExprPtr a = expr();
      expect(',');
      ExprPtr b = expr();
      expect(')');
      return make_node(ExprNode::Kind::IfEven, a, b);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  ExprPtr unary(ExprNode::Kind kind, std::size_t) {
    expect('(');
    ExprPtr a = expr();
    expect(')');
    return make_node(kind, a);
  }

  static bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!accept(c)) throw ParseError(strf("expected '%c'", c), pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_sequence_expr(std::string_view text) {
  if (text.empty()) throw ParseError("empty expression", 0);
  return detail::ExprParser(text).parse();
}

// Canonical fully parenthesized rendering; re-parses to a structurally
// identical tree.
inline std::string to_string(const ExprNode& e) {
  using K = ExprNode::Kind;
  auto bin = [&](const char* op) {
    return "(" + to_string(*e.a) + op + to_string(*e.b) + ")";
  };
  switch (e.kind) {
    case K::Number: return e.lexeme.empty() ? rat_num(e.number).str() : e.lexeme;
    case K::Var: return "n";
    case K::Prime: return "p(" + to_string(*e.a) + ")";
    case K::Ln: return "ln(" + to_string(*e.a) + ")";
    case K::IfEven: return "if_even(" + to_string(*e.a) + "," + to_string(*e.b) + ")";
    case K::Add: return bin("+");
    case K::Sub: return bin("-");
    case K::Mul: return bin("*");
    case K::Div: return bin("/");
    case K::Pow: return bin("^");
  }
  return "?";
}

inline bool structurally_equal(const ExprNode& x, const ExprNode& y) {
  if (x.kind != y.kind) return false;
  if (x.kind == ExprNode::Kind::Number) return x.number == y.number;
  if (x.a && (!y.a || !structurally_equal(*x.a, *y.a))) return false;
  if (!x.a && y.a) return false;
  if (x.b && (!y.b || !structurally_equal(*x.b, *y.b))) return false;
  if (!x.b && y.b) return false;
  return true;
}

struct ExprContext {
  u64 n;                     // value of the variable
  PrimeTable* primes;        // source for p(...)
};

// Evaluates the tree at ctx.n. if_even picks its branch by the parity of
// ctx.n and only evaluates the taken branch.
inline EvalValue eval_expr(const ExprNode& e, const ExprContext& ctx) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Number: return EvalValue::exact(e.number);
    case K::Var: return EvalValue::exact_int(ctx.n);
    case K::Prime: {
      EvalValue idx = eval_expr(*e.a, ctx);
      if (!idx.is_exact() || !rat_is_integer(idx.rational()))
        throw DomainError("p() needs an exact integer argument");
      BigInt k = rat_num(idx.rational());
      if (k < 1 || k > u64(INT64_MAX)) throw DomainError("p() argument out of range");
      u64 kk = k.convert_to<u64>();
      if (ctx.primes == nullptr) throw DomainError("p() needs a prime source");
      ctx.primes->ensure_count(kk);
      return EvalValue::exact_int(ctx.primes->p(kk));
    }
    case K::Ln: return EvalValue::ln(eval_expr(*e.a, ctx));
    case K::IfEven:
      return ctx.n % 2 == 0 ? eval_expr(*e.a, ctx) : eval_expr(*e.b, ctx);
    case K::Add: return eval_expr(*e.a, ctx) + eval_expr(*e.b, ctx);
    case K::Sub: return eval_expr(*e.a, ctx) - eval_expr(*e.b, ctx);
    case K::Mul: return eval_expr(*e.a, ctx) * eval_expr(*e.b, ctx);
    case K::Div: return eval_expr(*e.a, ctx) / eval_expr(*e.b, ctx);
    case K::Pow:
      return EvalValue::pow(eval_expr(*e.a, ctx), eval_expr(*e.b, ctx));
  }
  throw DomainError("corrupt expression tree");
}

}  // namespace gapforge
