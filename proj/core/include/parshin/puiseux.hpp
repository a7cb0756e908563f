// Newton-Puiseux expansion of plane-curve germs over an abstract field.
//
// A germ g(s, t) with g(0,0) = 0 is expanded into local branches, each
// parametrized as (s(tau), t(tau)) with one of the two coordinate series a
// pure monomial.  Over exact fields only branches whose slope equations
// have roots in the field are produced (complete = false otherwise); over
// complex doubles every branch is produced numerically.
#pragma once

#include <vector>

#include "parshin/bipoly.hpp"

namespace parshin {

struct puiseux_error : series_error {
  using series_error::series_error;
};

template <class F>
struct PuiseuxBranchT {
  PuiseuxBranchT(int r, Laurent<F> s, Laurent<F> t)
      : ram(r), s_series(std::move(s)), t_series(std::move(t)) {}

  // Valuation of s(tau): the covering degree over the base coordinate.
  int ram = 1;
  Laurent<F> s_series;
  Laurent<F> t_series;
};

template <class F>
struct PuiseuxOutcome {
  std::vector<PuiseuxBranchT<F>> branches;
  bool complete = true;    // every branch realized over F
  int expected_sheets = 0; // t-degree of the distinguished factor
};

template <class F>
struct RootList {
  std::vector<std::pair<F, int>> roots;  // (root, multiplicity), nonzero roots
  bool complete = true;
};

RootList<ExactScalar> find_field_roots(const std::vector<ExactScalar>& coeffs);
RootList<std::complex<double>> find_field_roots(const std::vector<std::complex<double>>& coeffs);
RootList<RationalFunction> find_field_roots(const std::vector<RationalFunction>& coeffs);

// Magnitude used for float-flavor zero tests; exact fields report 1 for
// nonzero values.
inline double coeff_mag(const ExactScalar& c) { return c.is_zero() ? 0.0 : 1.0; }
inline double coeff_mag(const std::complex<double>& c) { return std::abs(c); }
inline double coeff_mag(const RationalFunction& c) { return c.is_zero() ? 0.0 : 1.0; }

template <class F>
PuiseuxOutcome<F> newton_puiseux(const BiPoly<F>& germ, int order);

// Residual of a branch substituted into its germ (zero to truncation for a
// valid exact branch).
template <class F>
Laurent<F> branch_residual(const BiPoly<F>& germ, const PuiseuxBranchT<F>& b) {
  return germ.eval(b.s_series, b.t_series);
}

extern template PuiseuxOutcome<ExactScalar> newton_puiseux(const BiPoly<ExactScalar>&, int);
extern template PuiseuxOutcome<std::complex<double>> newton_puiseux(const BiPoly<std::complex<double>>&, int);
extern template PuiseuxOutcome<RationalFunction> newton_puiseux(const BiPoly<RationalFunction>&, int);

}  // namespace parshin
