// Quotients of multivariate polynomials.
#pragma once

#include <optional>

#include "parshin/polynomial.hpp"

namespace parshin {

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Polynomial num)
      : num_(std::move(num)), den_(num_.vars(), ExactScalar(1)) {}
  RationalFunction(Polynomial num, Polynomial den);
  RationalFunction(const VarList& vars, const ExactScalar& c)
      : RationalFunction(Polynomial(vars, c)) {}

  static RationalFunction variable(const VarList& vars, const std::string& name) {
    return RationalFunction(Polynomial::variable(vars, name));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const VarList& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  ExactScalar constant_value() const {
    return num_.constant_term() / den_.constant_term();
  }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return (a - b).is_zero();
  }

  RationalFunction partial(const std::string& var) const;

  // Exact evaluation; nullopt when the point lies on the polar set.
  std::optional<ExactScalar> eval(std::span<const ExactScalar> point) const;
  std::complex<double> eval(std::span<const std::complex<double>> point) const;

  std::string str() const;

 private:
  void normalize();
  Polynomial num_, den_;
};

// Dense univariate helpers over ExactScalar (used for gcd normalization and
// Laurent expansion of rational functions).
std::vector<ExactScalar> dense_coeffs_1var(const Polynomial& p);
Polynomial poly_from_dense(const VarList& vars, const std::vector<ExactScalar>& c);
std::vector<ExactScalar> poly_gcd_1var(std::vector<ExactScalar> a,
                                       std::vector<ExactScalar> b);
// quotient and remainder of a by b
std::pair<std::vector<ExactScalar>, std::vector<ExactScalar>> poly_divmod_1var(
    std::vector<ExactScalar> a, const std::vector<ExactScalar>& b);

}  // namespace parshin
