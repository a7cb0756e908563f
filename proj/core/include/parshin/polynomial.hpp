// Sparse multivariate polynomials over ExactScalar.
#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "parshin/exact.hpp"

namespace parshin {

using VarList = std::vector<std::string>;
using Exponents = std::vector<int>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VarList vars) : vars_(std::move(vars)) {}
  // Constant polynomial.
  Polynomial(VarList vars, const ExactScalar& c);

  static Polynomial variable(const VarList& vars, const std::string& name);

  const VarList& vars() const { return vars_; }
  const std::map<Exponents, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  ExactScalar constant_term() const;

  void add_term(const Exponents& e, const ExactScalar& c);

  int degree_in(const std::string& var) const;
  int total_degree() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator*(const ExactScalar& c) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Polynomial partial(const std::string& var) const;

  ExactScalar eval(std::span<const ExactScalar> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;

  // Evaluates in an arbitrary commutative ring R.  `embed` lifts an
  // ExactScalar coefficient into R; `point` gives the variable images.
  template <class R, class Embed>
  R eval_with(std::span<const R> point, Embed embed) const {
    R acc = embed(ExactScalar(0));
    for (const auto& [e, c] : terms_) {
      R term = embed(c);
      for (size_t v = 0; v < e.size(); ++v) {
        for (int k = 0; k < e[v]; ++k) term = term * point[v];
      }
      acc = acc + term;
    }
    return acc;
  }

  // Divides all coefficients by their content (gcd of rationals, sign from
  // the leading term); returns the content.
  ExactScalar remove_content();

  std::string str() const;

 private:
  int var_index(const std::string& name) const;
  VarList vars_;
  std::map<Exponents, ExactScalar> terms_;  // no zero coefficients stored
};

}  // namespace parshin
