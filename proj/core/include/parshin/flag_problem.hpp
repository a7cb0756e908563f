// Problem data model: ambient space, hypersurface, flag, local parameters,
// differential form; validation of the standing hypotheses on parameters.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "parshin/puiseux.hpp"

namespace parshin {

struct flag_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One term R * dx_{i1} ^ ... ^ dx_{in} of a rational n-form; `diffs` holds
// the ordered ambient coordinate indices.
struct FormTerm {
  RationalFunction coeff;
  std::vector<int> diffs;
};

struct DifferentialForm {
  std::vector<FormTerm> terms;
  int degree() const { return terms.empty() ? 0 : int(terms[0].diffs.size()); }
};

// A complete flag problem.  Conventions:
//  - n = 2: ambient is 3-space with hypersurface V2 = {surface = 0}, or the
//    plane with V2 the whole plane (surface identically zero); V1 is given by
//    a rational parametrization `curve` in the variable `curve_param` with
//    curve(0) = point.
//  - n = 1: ambient is the plane with V1 = {surface = 0}, or the affine line
//    itself (surface zero, one ambient variable).
struct FlagProblem {
  int n = 2;
  VarList vars;
  Polynomial surface;
  std::vector<RationalFunction> curve;
  std::string curve_param = "t";
  std::vector<ExactScalar> point;
  std::vector<RationalFunction> params;
  DifferentialForm form;

  int ambient_dim() const { return int(vars.size()); }
  bool full_ambient() const { return surface.is_zero(); }
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

// Monodromy orbit of local branches together with covering degrees.
struct ParshinPoint {
  int orbit_id = 0;
  std::vector<int> members;   // branch indices at the loop base point
  std::vector<int> covering;  // (m_1, ..., m_n)
  // Ambient start point of the associated torus component (theta = 0);
  // filled by the numeric enumeration.
  std::vector<std::complex<double>> base_point;
};

// Structural checks plus the order-1 valuation conditions on u_1..u_n and
// generic independence of the parameter differentials.
ValidationReport validate_parameters(const FlagProblem& p);

// --- helpers shared by the symbolic and numeric engines ---

// Substitutes the curve parametrization into a rational function of the
// ambient variables; result is univariate in the curve parameter.
RationalFunction compose_on_curve(const RationalFunction& u, const FlagProblem& p);

// t-adic valuation at t = 0 of a univariate rational function (INT_MAX for 0).
int valuation_at_zero(const RationalFunction& f);

// The two coordinate directions spanning the transverse plane to V1 (the
// coordinate of largest tangent magnitude at the base point is excluded).
std::pair<int, int> transverse_dirs(const FlagProblem& p);

// Transverse-slice germ along V1 at the generic point (coefficients are
// rational functions of the curve parameter).  n = 2 only.
BiPoly<RationalFunction> slice_germ_generic(const FlagProblem& p);

// Float slice germ at the numeric curve point with parameter value tb.
BiPoly<std::complex<double>> slice_germ_at(const FlagProblem& p,
                                           std::complex<double> tb);

// Ambient coordinate series of a slice branch: component v is
// curve_v(t) + s(tau)*[v = dir_s] + t(tau)*[v = dir_t].
template <class F>
std::vector<Laurent<F>> branch_coordinates(const std::vector<F>& base,
                                           const PuiseuxBranchT<F>& b,
                                           std::pair<int, int> dirs) {
  std::vector<Laurent<F>> out;
  int trunc = std::min(b.s_series.truncation_order(), b.t_series.truncation_order());
  for (int v = 0; v < int(base.size()); ++v) {
    Laurent<F> c = Laurent<F>::constant(base[size_t(v)], trunc);
    if (v == dirs.first) c = c + b.s_series;
    if (v == dirs.second) c = c + b.t_series;
    out.push_back(std::move(c));
  }
  return out;
}

inline ExactScalar embed_scalar(const ExactScalar& c, const ExactScalar&) { return c; }
inline std::complex<double> embed_scalar(const ExactScalar& c, const std::complex<double>&) {
  return c.to_complex();
}
inline RationalFunction embed_scalar(const ExactScalar& c, const RationalFunction& like) {
  return RationalFunction(like.vars(), c);
}

// Laurent expansion in tau of a rational function along coordinate series.
template <class F>
Laurent<F> expand_along(const RationalFunction& r, const std::vector<Laurent<F>>& coords,
                        const F& proto) {
  int trunc = coords.empty() ? 0 : coords[0].truncation_order();
  auto embed = [&](const ExactScalar& c) {
    return Laurent<F>::constant(embed_scalar(c, proto), trunc);
  };
  Laurent<F> num = r.num().eval_with<Laurent<F>>(coords, embed);
  Laurent<F> den = r.den().eval_with<Laurent<F>>(coords, embed);
  return num / den;
}

// Puiseux branches of the curve at V0 for n = 1 problems (exact flavor).
PuiseuxOutcome<ExactScalar> curve_branches(const FlagProblem& p, int order);

// Parshin points: monodromy orbits of transverse branches (n = 2; numeric),
// or one point per Puiseux branch of the curve at V0 (n = 1).
// Implemented in the monodromy translation unit.
std::vector<ParshinPoint> enumerate_parshin_points(const FlagProblem& p,
                                                   double delta1, double delta2);

}  // namespace parshin
