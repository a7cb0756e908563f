#include "parshin/exact.hpp"

#include <sstream>

namespace parshin {

ExactScalar::ExactScalar(long num, long den) : re_(num, den), im_(0) {
  if (den == 0) throw exact_error("zero denominator");
  canon();
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw exact_error("division by zero");
  if (b.im_ == 0) {
    return ExactScalar(a.re_ / b.re_, a.im_ / b.re_);
  }
  mpq_class n = b.norm();
  // a * conj(b) / |b|^2
  return ExactScalar((a.re_ * b.re_ + a.im_ * b.im_) / n,
                     (a.im_ * b.re_ - a.re_ * b.im_) / n);
}

ExactScalar ExactScalar::pow(long e) const {
  if (e < 0) return ExactScalar(1) / pow(-e);
  ExactScalar r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

ExactScalar ExactScalar::parse(const std::string& text) {
  std::string s = text;
  bool imag = false;
  if (!s.empty() && s.back() == 'i') {
    imag = true;
    s.pop_back();
    if (s.empty() || s == "-" || s == "+") s += "1";
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw exact_error("bad rational literal: " + text);
  q.canonicalize();
  return imag ? ExactScalar(mpq_class(0), q) : ExactScalar(q);
}

std::string ExactScalar::str() const {
  std::ostringstream os;
  if (im_ == 0) {
    os << re_;
  } else if (re_ == 0) {
    os << im_ << "*i";
  } else {
    os << re_ << (im_ > 0 ? "+" : "") << im_ << "*i";
  }
  return os.str();
}

}  // namespace parshin
