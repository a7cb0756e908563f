// Sparse bivariate polynomials over an abstract field; the germ
// representation used by the branch expansion code.
#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "parshin/fields.hpp"

namespace parshin {

template <class F>
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (s exponent, t exponent)

  explicit BiPoly(F proto) : proto_(std::move(proto)) {}

  static BiPoly constant(const F& c) {
    BiPoly p(field_ops<F>::zero(c));
    p.add_term(0, 0, c);
    return p;
  }
  static BiPoly var_s(const F& proto) {
    BiPoly p(proto);
    p.add_term(1, 0, field_ops<F>::one(proto));
    return p;
  }
  static BiPoly var_t(const F& proto) {
    BiPoly p(proto);
    p.add_term(0, 1, field_ops<F>::one(proto));
    return p;
  }

  const F& proto() const { return proto_; }
  const std::map<Key, F>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int i, int j, const F& c) {
    if (field_ops<F>::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(Key{i, j}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (field_ops<F>::is_zero(it->second)) terms_.erase(it);
    }
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.proto_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }

  BiPoly swapped() const {
    BiPoly r(proto_);
    for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
    return r;
  }

  BiPoly partial_t() const {
    BiPoly r(proto_);
    for (const auto& [k, c] : terms_) {
      if (k.second == 0) continue;
      r.add_term(k.first, k.second - 1, c * field_ops<F>::from_long(proto_, k.second));
    }
    return r;
  }

  int min_s_exp() const {
    int m = INT_MAX;
    for (const auto& [k, c] : terms_) m = std::min(m, k.first);
    return m;
  }
  int min_t_exp() const {
    int m = INT_MAX;
    for (const auto& [k, c] : terms_) m = std::min(m, k.second);
    return m;
  }
  // t-adic order of the restriction to {s = 0}; INT_MAX when the restriction
  // vanishes identically.
  int dist_degree() const {
    int m = INT_MAX;
    for (const auto& [k, c] : terms_)
      if (k.first == 0) m = std::min(m, k.second);
    return m;
  }

  BiPoly shift_s(int d) const {  // multiply by s^d (d may be negative)
    BiPoly r(proto_);
    for (const auto& [k, c] : terms_) r.add_term(k.first + d, k.second, c);
    return r;
  }
  BiPoly shift_t(int d) const {
    BiPoly r(proto_);
    for (const auto& [k, c] : terms_) r.add_term(k.first, k.second + d, c);
    return r;
  }

  // g(x^q, x^p (c + y)), divided by the minimal power of x.
  BiPoly ramified_transform(int q, int p, const F& c, int* stripped = nullptr) const {
    BiPoly r(proto_);
    for (const auto& [k, coeff] : terms_) {
      // (c + y)^j expanded binomially
      std::vector<F> binom{field_ops<F>::one(proto_)};
      for (int b = 0; b < k.second; ++b) {
        std::vector<F> nxt(binom.size() + 1, field_ops<F>::zero(proto_));
        for (size_t u = 0; u < binom.size(); ++u) {
          nxt[u] = nxt[u] + binom[u] * c;
          nxt[u + 1] = nxt[u + 1] + binom[u];
        }
        binom = std::move(nxt);
      }
      int xe = q * k.first + p * k.second;
      for (size_t u = 0; u < binom.size(); ++u)
        r.add_term(xe, int(u), coeff * binom[u]);
    }
    int w = r.min_s_exp();
    if (stripped) *stripped = w;
    return r.shift_s(-w);
  }

  Laurent<F> eval(const Laurent<F>& s_val, const Laurent<F>& t_val) const {
    int trunc = std::min(s_val.truncation_order(), t_val.truncation_order());
    Laurent<F> acc = Laurent<F>::zero(proto_, trunc);
    std::map<int, Laurent<F>> s_pow, t_pow;
    auto power = [&](std::map<int, Laurent<F>>& cache, const Laurent<F>& base, int e) {
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
      Laurent<F> r = Laurent<F>::constant(field_ops<F>::one(proto_), trunc);
      for (int k = 0; k < e; ++k) r = r * base;
      cache.emplace(e, r);
      return r;
    };
    for (const auto& [k, c] : terms_) {
      Laurent<F> term = power(s_pow, s_val, k.first) * power(t_pow, t_val, k.second);
      acc = acc + term.scaled(c);
    }
    return acc;
  }

  // Drops terms small relative to the largest coefficient (float germs only).
  template <class Mag>
  BiPoly chopped(double rel_tol, Mag mag) const {
    double mx = 0;
    for (const auto& [k, c] : terms_) mx = std::max(mx, mag(c));
    BiPoly r(proto_);
    for (const auto& [k, c] : terms_)
      if (mag(c) >= rel_tol * mx) r.add_term(k.first, k.second, c);
    return r;
  }

 private:
  F proto_;
  std::map<Key, F> terms_;
};

// Builds the plane-curve germ of `ambient` restricted to the affine 2-plane
// through `base` spanned by coordinate directions dir_s and dir_t.
template <class F, class Embed>
BiPoly<F> plane_germ(const Polynomial& ambient, std::span<const F> base,
                     int dir_s, int dir_t, Embed embed) {
  const F& proto = base[0];
  std::vector<BiPoly<F>> point;
  for (size_t v = 0; v < base.size(); ++v) {
    BiPoly<F> coord = BiPoly<F>::constant(base[v]);
    if (int(v) == dir_s) coord = coord + BiPoly<F>::var_s(proto);
    if (int(v) == dir_t) coord = coord + BiPoly<F>::var_t(proto);
    point.push_back(coord);
  }
  return ambient.eval_with<BiPoly<F>>(
      point, [&](const ExactScalar& c) { return BiPoly<F>::constant(embed(c)); });
}

}  // namespace parshin
