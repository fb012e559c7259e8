#pragma once
// Polynomial text format.
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := factor { '*' factor }
//   factor  := ('+'|'-') factor | primary [ '^' exponent ]
//   primary := integer [ '/' integer ] | name [ derivative ] | '(' expr ')'
//   derivative := "'"+ | '^(' integer ')'      (differential mode only)
//
// Juxtaposition (implicit multiplication) is rejected. Rationals print as
// p/q; printing then parsing gives back the identical polynomial.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "tdecomp/vars.hpp"

namespace tdecomp {

namespace detail {

class PolyParser {
public:
  PolyParser(std::string_view s, const VarOrder& ord) : s_(s), ord_(ord) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) {
      if (starts_operand()) throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    }
    return p;
  }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_operand() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc;
    bool neg = false;
    if (peek('+') || peek('-')) neg = s_[pos_++] == '-';
    acc = term();
    if (neg) acc = -acc;
    while (peek('+') || peek('-')) {
      bool minus = s_[pos_++] == '-';
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (starts_operand()) {
        throw ParseError("implicit multiplication is not allowed", pos_);
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    if (peek('+')) {
      ++pos_;
      return factor();
    }
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      bool paren = peek('(');
      if (paren) ++pos_;
      unsigned long e = integer();
      if (paren) expect(')');
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class num(std::string(s_.substr(start, pos_ - start)));
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) throw ParseError("expected denominator", pos_);
        mpz_class den(std::string(s_.substr(ds, pos_ - ds)));
        if (den == 0) throw ParseError("zero denominator", ds);
        Rational q(num, den);
        q.canonicalize();
        return Poly(q);
      }
      return Poly(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto v = ord_.find(name);
      if (!v) throw ParseError("unknown variable '" + name + "'", start);
      unsigned order = 0;
      if (pos_ < s_.size() && s_[pos_] == '\'') {
        if (!ord_.is_differential()) throw ParseError("derivative in algebraic mode", pos_);
        while (pos_ < s_.size() && s_[pos_] == '\'') {
          ++order;
          ++pos_;
        }
      } else if (ord_.is_differential() && pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '(') {
        pos_ += 2;
        order = static_cast<unsigned>(integer());
        expect(')');
      }
      return Poly::var(ord_.is_differential() ? diff_var(diff_base(*v), order) : *v);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  unsigned long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", pos_);
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view s_;
  const VarOrder& ord_;
  std::size_t pos_ = 0;
};

inline std::string rational_str(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace detail

inline Poly parse_poly(std::string_view text, const VarOrder& ord) { return detail::PolyParser(text, ord).parse(); }

inline std::string to_string(const Monomial& m, const VarOrder& ord) {
  std::string out;
  const auto& f = m.factors();
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += ord.name(it->first);
    if (it->second != 1) out += "^" + std::to_string(it->second);
  }
  return out;
}

inline std::string to_string(const Poly& p, const VarOrder& ord) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    first = false;
    if (t.mono.is_one()) {
      out += detail::rational_str(c);
    } else {
      if (c != 1) out += detail::rational_str(c) + "*";
      out += to_string(t.mono, ord);
    }
  }
  return out;
}

} // namespace tdecomp
