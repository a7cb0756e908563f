// Arbitrary-precision Gaussian-rational scalars.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace parshin {

struct exact_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rational number with an optional imaginary part, stored in lowest terms
// with positive denominators.  Arithmetic never rounds.
class ExactScalar {
 public:
  ExactScalar() : re_(0), im_(0) {}
  ExactScalar(long n) : re_(n), im_(0) {}
  ExactScalar(long num, long den);
  explicit ExactScalar(const mpq_class& re) : re_(re), im_(0) { canon(); }
  ExactScalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) { canon(); }

  static ExactScalar i() { return ExactScalar(mpq_class(0), mpq_class(1)); }
  // Parses "3", "-3/4", "i", "2i", "-1/2i".
  static ExactScalar parse(const std::string& text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return im_ == 0 && re_ == 1; }

  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }
  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  // re^2 + im^2
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.re_ * b.re_ - a.im_ * b.im_,
                       a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);

  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
  ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
  // Lexicographic; used only for deterministic ordering in containers.
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  ExactScalar pow(long e) const;

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }

  std::string str() const;

 private:
  void canon() {
    re_.canonicalize();
    im_.canonicalize();
  }
  mpq_class re_, im_;
};

}  // namespace parshin
