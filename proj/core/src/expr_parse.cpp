#include "parshin/expr_parse.hpp"

#include <algorithm>
#include <cctype>

namespace parshin {
namespace {

class Parser {
 public:
  Parser(const std::string& text, const VarList& vars) : s_(text), vars_(vars) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      if (eat('*')) acc *= factor();
      else if (eat('/')) {
        RationalFunction d = factor();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else
        return acc;
    }
  }

  RationalFunction factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    RationalFunction base = primary();
    if (eat('^')) {
      long e = integer();
      RationalFunction r(vars_, ExactScalar(1));
      bool inv = e < 0;
      if (inv) e = -e;
      for (long k = 0; k < e; ++k) r *= base;
      if (inv) r = RationalFunction(vars_, ExactScalar(1)) / r;
      return r;
    }
    return base;
  }

  long integer() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer exponent");
    return std::stol(s_.substr(start, pos_ - start));
  }

  RationalFunction primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class q(s_.substr(start, pos_ - start), 10);
      return RationalFunction(vars_, ExactScalar(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "i" && std::find(vars_.begin(), vars_.end(), "i") == vars_.end())
        return RationalFunction(vars_, ExactScalar::i());
      if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return RationalFunction::variable(vars_, name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  const VarList& vars_;
  size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational(const std::string& text, const VarList& vars) {
  return Parser(text, vars).parse();
}

Polynomial parse_polynomial(const std::string& text, const VarList& vars) {
  RationalFunction r = parse_rational(text, vars);
  if (!r.den().is_constant())
    throw parse_error("expected a polynomial (non-constant denominator)", 0);
  return r.num() * (ExactScalar(1) / r.den().constant_term());
}

}  // namespace parshin
