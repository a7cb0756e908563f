// Truncated Laurent series over an abstract coefficient field.
//
// Every series carries an explicit truncation order: coefficients are known
// exactly for exponents in [low, trunc) and unknown from trunc on.  All ring
// operations propagate the truncation pessimistically; reading past the
// window throws insufficient_order so the caller can re-expand deeper.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "parshin/exact.hpp"

namespace parshin {

struct series_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct insufficient_order : series_error {
  explicit insufficient_order(int wanted, int have)
      : series_error("coefficient of exponent " + std::to_string(wanted) +
                     " not resolved (truncation order " + std::to_string(have) + ")"),
        wanted_exponent(wanted), truncation_order(have) {}
  int wanted_exponent;
  int truncation_order;
};

template <class F>
struct field_ops {
  static F zero(const F&) { return F(0); }
  static F one(const F&) { return F(1); }
  static F from_long(const F&, long k) { return F(k); }
  static bool is_zero(const F& x) { return x == F(0); }
};

template <>
struct field_ops<ExactScalar> {
  static ExactScalar zero(const ExactScalar&) { return ExactScalar(0); }
  static ExactScalar one(const ExactScalar&) { return ExactScalar(1); }
  static ExactScalar from_long(const ExactScalar&, long k) { return ExactScalar(k); }
  static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
};

template <class F>
class Laurent {
 public:
  static constexpr int kMaxTrunc = 1 << 20;

  // Identically-zero series resolved up to (not including) trunc.
  static Laurent zero(F proto, int trunc) {
    Laurent s(std::move(proto));
    s.low_ = s.trunc_ = trunc;
    return s;
  }

  static Laurent monomial(F coeff, int exp, int trunc) {
    Laurent s(field_ops<F>::zero(coeff));
    if (field_ops<F>::is_zero(coeff)) return zero(s.proto_, trunc);
    s.low_ = exp;
    s.trunc_ = trunc;
    s.c_.assign(size_t(trunc - exp), s.proto_);
    s.c_[0] = std::move(coeff);
    return s;
  }

  static Laurent constant(F value, int trunc) { return monomial(std::move(value), 0, trunc); }

  static Laurent from_coeffs(F proto, int low, std::vector<F> coeffs, int trunc) {
    Laurent s(std::move(proto));
    s.low_ = low;
    s.c_ = std::move(coeffs);
    s.trunc_ = trunc;
    if (int(s.c_.size()) != trunc - low) throw series_error("coefficient span mismatch");
    s.strip();
    return s;
  }

  const F& proto() const { return proto_; }
  int low() const { return low_; }
  int truncation_order() const { return trunc_; }
  bool is_zero_to_trunc() const { return c_.empty(); }

  // Valuation (lowest nonzero exponent); for a series that is zero to
  // truncation this is the truncation order itself.
  int valuation() const { return low_; }

  // Resolved coefficient of exponent k.  Exponents below the window are
  // resolved zeros; exponents at or above the truncation order throw.
  F coeff(int k) const {
    if (k >= trunc_) throw insufficient_order(k, trunc_);
    if (k < low_) return field_ops<F>::zero(proto_);
    return c_[size_t(k - low_)];
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.c_) c = field_ops<F>::zero(proto_) - c;
    return r;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    int trunc = std::min(a.trunc_, b.trunc_);
    int low = std::min(std::min(a.low_, b.low_), trunc);
    Laurent r(a.proto_);
    r.low_ = low;
    r.trunc_ = trunc;
    r.c_.assign(size_t(trunc - low), field_ops<F>::zero(a.proto_));
    for (int k = low; k < trunc; ++k) {
      if (k >= a.low_ && k < a.trunc_) r.c_[k - low] = r.c_[k - low] + a.c_[k - a.low_];
      if (k >= b.low_ && k < b.trunc_) r.c_[k - low] = r.c_[k - low] + b.c_[k - b.low_];
    }
    r.strip();
    return r;
  }

  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    // unknown tails enter at a.low + b.trunc and b.low + a.trunc
    long trunc = std::min<long>(std::min<long>(long(a.low_) + b.trunc_, long(b.low_) + a.trunc_), kMaxTrunc);
    if (a.c_.empty() || b.c_.empty()) return zero(a.proto_, int(trunc));
    int low = a.low_ + b.low_;
    Laurent r(a.proto_);
    r.low_ = low;
    r.trunc_ = int(trunc);
    r.c_.assign(size_t(trunc - low), field_ops<F>::zero(a.proto_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (field_ops<F>::is_zero(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        long e = long(a.low_) + long(i) + b.low_ + long(j);
        if (e >= trunc) break;
        r.c_[size_t(e - low)] = r.c_[size_t(e - low)] + a.c_[i] * b.c_[j];
      }
    }
    r.strip();
    return r;
  }

  Laurent scaled(const F& f) const {
    Laurent r = *this;
    for (auto& c : r.c_) c = c * f;
    r.strip();
    return r;
  }

  Laurent shifted(int d) const {
    Laurent r = *this;
    r.low_ += d;
    r.trunc_ += d;
    return r;
  }

  // Multiplicative inverse; requires the series to be nonzero to truncation.
  Laurent inverse() const {
    if (c_.empty())
      throw series_error("division by a series that is zero to truncation order");
    const F& lead = c_[0];
    F inv_lead = field_ops<F>::one(proto_) / lead;
    size_t n = c_.size();
    std::vector<F> d(n, field_ops<F>::zero(proto_));
    d[0] = inv_lead;
    for (size_t k = 1; k < n; ++k) {
      F acc = field_ops<F>::zero(proto_);
      for (size_t j = 1; j <= k; ++j) acc = acc + c_[j] * d[k - j];
      d[k] = field_ops<F>::zero(proto_) - inv_lead * acc;
    }
    Laurent r(proto_);
    r.low_ = -low_;
    r.trunc_ = r.low_ + int(n);
    r.c_ = std::move(d);
    r.strip();
    return r;
  }

  friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

  Laurent derivative() const {
    Laurent r(proto_);
    r.low_ = low_ - 1;
    r.trunc_ = trunc_ - 1;
    r.c_.assign(c_.size(), field_ops<F>::zero(proto_));
    for (size_t i = 0; i < c_.size(); ++i)
      r.c_[i] = c_[i] * field_ops<F>::from_long(proto_, low_ + long(i));
    r.strip();
    return r;
  }

  // Substitutes `inner` (valuation >= 1) for the variable of this series.
  Laurent compose(const Laurent& inner) const {
    if (inner.c_.empty() || inner.low_ < 1)
      throw series_error("composition requires inner series of positive valuation");
    int m = inner.low_;
    long tail_bound = std::min<long>(long(trunc_) * m, kMaxTrunc);
    if (c_.empty()) return zero(proto_, int(std::min<long>(tail_bound, long(trunc_) * m)));
    Laurent pos = Laurent::zero(proto_, int(tail_bound));
    // Horner on the non-negative part, highest exponent first.
    int top = trunc_ - 1;
    int start = std::max(low_, 0);
    for (int k = top; k >= start; --k) {
      pos = pos * inner + Laurent::constant(coeff(k), int(tail_bound));
    }
    for (int j = 0; j < start; ++j) pos = pos * inner;
    Laurent r = pos;
    if (low_ < 0) {
      Laurent inv = inner.inverse();
      Laurent ipow = inv;
      for (int k = -1; k >= low_; --k) {
        const F& ck = c_[size_t(k - low_)];
        if (!field_ops<F>::is_zero(ck)) r = r + ipow.scaled(ck);
        if (k > low_) ipow = ipow * inv;
      }
    }
    return r.truncated(int(tail_bound));
  }

  // Compositional inverse for valuation-1 series: returns g with
  // compose(g) == identity up to the truncation order.
  Laurent reversion() const {
    if (c_.empty() || low_ != 1)
      throw series_error("reversion requires a series of valuation exactly 1");
    int T = trunc_;
    Laurent id = monomial(field_ops<F>::one(proto_), 1, T);
    Laurent g = monomial(field_ops<F>::one(proto_) / c_[0], 1, T);
    Laurent dw = derivative();
    for (int it = 0; it < 40; ++it) {
      Laurent err = compose(g) - id;
      if (err.is_zero_to_trunc()) break;
      g = g - err / dw.compose(g);
    }
    return g;
  }

  Laurent truncated(int t) const {
    Laurent r(proto_);
    r.trunc_ = std::min(trunc_, t);
    r.low_ = std::min(low_, r.trunc_);
    int len = std::max(0, std::min(int(c_.size()), r.trunc_ - low_));
    r.c_.assign(c_.begin(), c_.begin() + len);
    r.strip();
    return r;
  }

  // Drops stored coefficients below `tol` in magnitude (float flavors only;
  // `mag` maps a coefficient to a double).
  template <class Mag>
  Laurent chopped(double tol, Mag mag) const {
    Laurent r = *this;
    for (auto& c : r.c_) {
      if (mag(c) < tol) c = field_ops<F>::zero(proto_);
    }
    r.strip();
    return r;
  }

  std::string str(const std::string& var = "u") const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (field_ops<F>::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += coeff_str(c_[i]) + "*" + var + "^" + std::to_string(low_ + int(i));
    }
    if (out.empty()) out = "0";
    out += " + O(" + var + "^" + std::to_string(trunc_) + ")";
    return out;
  }

 private:
  explicit Laurent(F proto) : proto_(std::move(proto)) {}

  static std::string coeff_str(const ExactScalar& c) { return c.str(); }
  template <class G>
  static std::string coeff_str(const G&) { return "<coeff>"; }

  void strip() {
    size_t k = 0;
    while (k < c_.size() && field_ops<F>::is_zero(c_[k])) ++k;
    if (k == c_.size()) {
      c_.clear();
      low_ = trunc_;
      return;
    }
    if (k > 0) {
      c_.erase(c_.begin(), c_.begin() + long(k));
      low_ += int(k);
    }
  }

  F proto_;
  int low_ = 0;
  int trunc_ = 0;
  std::vector<F> c_;  // exponents low_ .. trunc_-1
};

using ExactSeries = Laurent<ExactScalar>;
using ComplexSeries = Laurent<std::complex<double>>;

// field_ops for nested series coefficients.
template <class F>
struct field_ops<Laurent<F>> {
  static Laurent<F> zero(const Laurent<F>& like) {
    return Laurent<F>::zero(like.proto(), like.truncation_order());
  }
  static Laurent<F> one(const Laurent<F>& like) {
    return Laurent<F>::constant(field_ops<F>::one(like.proto()), like.truncation_order());
  }
  static Laurent<F> from_long(const Laurent<F>& like, long k) {
    return Laurent<F>::constant(field_ops<F>::from_long(like.proto(), k),
                                like.truncation_order());
  }
  static bool is_zero(const Laurent<F>& x) { return x.is_zero_to_trunc(); }
};

}  // namespace parshin
