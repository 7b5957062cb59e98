#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"

namespace ruit {

// Grammar (whitespace-insensitive):
//   formula := imp
//   imp     := or ( "->" imp )?
//   or      := and ( "|" and )*
//   and     := unit ( "&" unit )*
//   unit    := "~" unit | "(" formula ")" | "T" | "F" | atom
//   atom    := "p" | "q" | "r" | "x" digits

namespace detail {

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text, std::size_t base_offset = 0)
      : text_(text), base_(base_offset) {}

  Formula parse_formula() { return parse_imp(); }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail({"end of input", "->", "|", "&"});
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  std::size_t position() const { return pos_; }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  /// "|" but not the start of "|-".
  bool accept_or() {
    skip_ws();
    if (text_.substr(pos_, 2) == "|-") return false;
    return accept("|");
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "syntax error at offset " + std::to_string(base_ + pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    throw ParseError(base_ + pos_, std::move(expected), msg);
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return imp(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (accept_or()) acc = disj(acc, parse_and());
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unit();
    while (accept("&")) acc = conj(acc, parse_unit());
    return acc;
  }

  Formula parse_unit() {
    skip_ws();
    if (accept("~")) return neg(parse_unit());
    if (accept("(")) {
      Formula inner = parse_imp();
      if (!accept(")")) fail({")", "->", "|", "&"});
      return inner;
    }
    if (pos_ < text_.size()) {
      switch (text_[pos_]) {
        case 'T': ++pos_; return top();
        case 'F': ++pos_; return bot();
        case 'p': ++pos_; return var(0);
        case 'q': ++pos_; return var(1);
        case 'r': ++pos_; return var(2);
        case 'x': {
          std::size_t end = pos_ + 1;
          while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
          if (end == pos_ + 1) {
            ++pos_;
            fail({"digits"});
          }
          const auto digits = text_.substr(pos_ + 1, end - pos_ - 1);
          unsigned long long index = 0;
          for (char c : digits) {
            index = index * 10 + static_cast<unsigned>(c - '0');
            if (index > 0xffffffffULL) fail({"variable index below 2^32"});
          }
          pos_ = end;
          return var(static_cast<std::uint32_t>(index));
        }
        default: break;
      }
    }
    fail({"~", "(", "T", "F", "p", "q", "r", "x<digits>"});
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline int precedence(Kind k) {
  switch (k) {
    case Kind::Imp: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
  }
}

inline bool is_negation(Formula f) { return f.is(Kind::Imp) && f.rhs() == bot(); }

inline void print_to(Formula f, std::string& out);

inline void print_child(Formula child, bool needs_parens, std::string& out) {
  if (needs_parens) out += '(';
  print_to(child, out);
  if (needs_parens) out += ')';
}

inline void print_to(Formula f, std::string& out) {
  switch (f.kind()) {
    case Kind::Top: out += 'T'; return;
    case Kind::Bot: out += 'F'; return;
    case Kind::Var: {
      const auto i = f.var_index();
      if (i < 3) out += "pqr"[i];
      else out += "x" + std::to_string(i);
      return;
    }
    default: break;
  }
  if (is_negation(f)) {
    out += '~';
    const Formula body = f.lhs();
    print_child(body, body.is_binary() && !is_negation(body), out);
    return;
  }
  const int prec = precedence(f.kind());
  const Formula a = f.lhs();
  const Formula b = f.rhs();
  auto prec_of = [](Formula g) { return is_negation(g) ? 4 : precedence(g.kind()); };
  if (f.is(Kind::Imp)) {
    // Right-associative: parenthesize an implication on the left.
    print_child(a, prec_of(a) <= prec, out);
    out += " -> ";
    print_child(b, prec_of(b) < prec, out);
  } else {
    // Left-associative.
    print_child(a, prec_of(a) < prec, out);
    out += f.is(Kind::And) ? " & " : " | ";
    print_child(b, prec_of(b) <= prec, out);
  }
}

}  // namespace detail

inline Formula parse(std::string_view text) {
  detail::FormulaParser parser(text);
  Formula f = parser.parse_formula();
  parser.expect_end();
  return f;
}

/// Minimal-parenthesis canonical rendering; `parse(print(f)) == f`.
inline std::string print(Formula f) {
  std::string out;
  detail::print_to(f, out);
  return out;
}

inline std::string var_name(std::uint32_t index) { return print(var(index)); }

}  // namespace ruit
