#include "parshin/rational_function.hpp"

namespace parshin {

std::vector<ExactScalar> dense_coeffs_1var(const Polynomial& p) {
  std::vector<ExactScalar> c;
  for (const auto& [e, k] : p.terms()) {
    size_t d = size_t(e[0]);
    if (c.size() <= d) c.resize(d + 1);
    c[d] = k;
  }
  return c;
}

Polynomial poly_from_dense(const VarList& vars, const std::vector<ExactScalar>& c) {
  Polynomial p(vars);
  for (size_t d = 0; d < c.size(); ++d) p.add_term({int(d)}, c[d]);
  return p;
}

static void trim(std::vector<ExactScalar>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

std::pair<std::vector<ExactScalar>, std::vector<ExactScalar>> poly_divmod_1var(
    std::vector<ExactScalar> a, const std::vector<ExactScalar>& b) {
  trim(a);
  std::vector<ExactScalar> bb = b;
  trim(bb);
  if (bb.empty()) throw exact_error("polynomial division by zero");
  std::vector<ExactScalar> q;
  if (a.size() >= bb.size()) q.resize(a.size() - bb.size() + 1);
  while (a.size() >= bb.size() && !a.empty()) {
    ExactScalar f = a.back() / bb.back();
    size_t shift = a.size() - bb.size();
    q[shift] = f;
    for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= f * bb[i];
    trim(a);
  }
  return {q, a};
}

std::vector<ExactScalar> poly_gcd_1var(std::vector<ExactScalar> a,
                                       std::vector<ExactScalar> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = poly_divmod_1var(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    ExactScalar lead = a.back();
    for (auto& c : a) c /= lead;  // monic
  }
  return a;
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.vars() != den_.vars()) throw exact_error("variable-list mismatch");
  if (den_.is_zero()) throw exact_error("zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(num_.vars(), ExactScalar(1));
    return;
  }
  if (num_.vars().size() == 1) {
    auto g = poly_gcd_1var(dense_coeffs_1var(num_), dense_coeffs_1var(den_));
    if (g.size() > 1) {
      num_ = poly_from_dense(num_.vars(), poly_divmod_1var(dense_coeffs_1var(num_), g).first);
      den_ = poly_from_dense(num_.vars(), poly_divmod_1var(dense_coeffs_1var(den_), g).first);
    }
  }
  ExactScalar dc = den_.remove_content();
  num_ = num_ * (ExactScalar(1) / dc);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw exact_error("division by zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::partial(const std::string& var) const {
  // (n/d)' = (n'd - nd') / d^2
  return RationalFunction(num_.partial(var) * den_ - num_ * den_.partial(var),
                          den_ * den_);
}

std::optional<ExactScalar> RationalFunction::eval(std::span<const ExactScalar> point) const {
  ExactScalar d = den_.eval(point);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(point) / d;
}

std::complex<double> RationalFunction::eval(std::span<const std::complex<double>> point) const {
  return num_.eval(point) / den_.eval(point);
}

std::string RationalFunction::str() const {
  if (den_.is_constant() && den_.constant_term().is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace parshin
