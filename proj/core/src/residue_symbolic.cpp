#include "parshin/residue_symbolic.hpp"

#include <algorithm>

#include "parshin/fields.hpp"

namespace parshin {
namespace {

// Index of the first nonzero entry (the valuation), or -1 for all zero.
int dense_valuation(const std::vector<ExactScalar>& c) {
  for (size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) return int(k);
  return -1;
}

Laurent<ExactScalar> padded_series(std::vector<ExactScalar> c, int len) {
  c.resize(size_t(len), ExactScalar(0));
  return Laurent<ExactScalar>::from_coeffs(ExactScalar(0), 0, std::move(c), len);
}

// Coefficient-wise derivative with respect to the base-field variable `var`
// (the series variable is held fixed).
Laurent<RationalFunction> base_partial(const Laurent<RationalFunction>& s,
                                       const std::string& var,
                                       const RationalFunction& proto) {
  std::vector<RationalFunction> c;
  c.reserve(size_t(s.truncation_order() - s.low()));
  for (int k = s.low(); k < s.truncation_order(); ++k) c.push_back(s.coeff(k).partial(var));
  return Laurent<RationalFunction>::from_coeffs(proto, s.low(), std::move(c),
                                                s.truncation_order());
}

// Residue of the pulled-back 1-form of one n = 1 branch: the tau^{-1}
// coefficient of sum_terms R(X(tau)) * dX_a/dtau.
ExactScalar residue_1form_on_branch(const FlagProblem& p,
                                    const std::vector<Laurent<ExactScalar>>& coords) {
  Laurent<ExactScalar> g =
      Laurent<ExactScalar>::zero(ExactScalar(0), Laurent<ExactScalar>::kMaxTrunc);
  for (const auto& term : p.form.terms) {
    Laurent<ExactScalar> R = expand_along(term.coeff, coords, ExactScalar(0));
    g = g + R * coords[size_t(term.diffs[0])].derivative();
  }
  return g.coeff(-1);
}

SymbolicFlagResidue compute_once(const FlagProblem& p, int order) {
  SymbolicFlagResidue out;
  out.applicable = true;
  out.total = ExactScalar(0);

  if (p.n == 2 && !p.full_ambient()) {
    auto po = newton_puiseux(slice_germ_generic(p), order);
    if (!po.complete) {
      out.applicable = false;
      out.reason = "local branch expansion is not rational over the base field";
      return out;
    }
    auto dirs = transverse_dirs(p);
    for (const auto& b : po.branches) {
      auto coords = branch_coordinates(p.curve, b, dirs);
      Laurent<RationalFunction> g = pullback_series(p, coords, order);
      ExactScalar r = residue_at_zero_1var(g.coeff(-1));
      out.per_point.push_back(r);
      out.total = out.total + r;
    }
    return out;
  }

  if (p.n == 2) {  // full-ambient plane: the single branch is the plane itself
    std::vector<ExactScalar> zero{ExactScalar(0)};
    int dir = 1;
    double best = 1e300;
    for (int v = 0; v < 2; ++v) {
      auto d = p.curve[size_t(v)].partial(p.curve_param).eval(
          std::span<const ExactScalar>(zero));
      double mag = d ? std::abs(d->to_complex()) : 1e300;
      if (mag < best) {
        best = mag;
        dir = v;
      }
    }
    RationalFunction one = field_ops<RationalFunction>::one(p.curve[0]);
    std::vector<Laurent<RationalFunction>> coords;
    for (int v = 0; v < 2; ++v) {
      Laurent<RationalFunction> c =
          Laurent<RationalFunction>::constant(p.curve[size_t(v)], order);
      if (v == dir) c = c + Laurent<RationalFunction>::monomial(one, 1, order);
      coords.push_back(std::move(c));
    }
    Laurent<RationalFunction> g = pullback_series(p, coords, order);
    ExactScalar r = residue_at_zero_1var(g.coeff(-1));
    out.per_point.push_back(r);
    out.total = r;
    return out;
  }

  if (!p.full_ambient()) {  // n = 1 plane curve
    auto po = curve_branches(p, order);
    if (!po.complete) {
      out.applicable = false;
      out.reason = "local branch expansion is not rational over the base field";
      return out;
    }
    for (const auto& b : po.branches) {
      auto coords = branch_coordinates(p.point, b, {0, 1});
      ExactScalar r = residue_1form_on_branch(p, coords);
      out.per_point.push_back(r);
      out.total = out.total + r;
    }
    return out;
  }

  // n = 1 on the affine line
  std::vector<Laurent<ExactScalar>> coords;
  coords.push_back(Laurent<ExactScalar>::constant(p.point[0], order) +
                   Laurent<ExactScalar>::monomial(ExactScalar(1), 1, order));
  ExactScalar r = residue_1form_on_branch(p, coords);
  out.per_point.push_back(r);
  out.total = r;
  return out;
}

}  // namespace

Laurent<ExactScalar> laurent_of_rational_1var(const RationalFunction& f, int order) {
  std::vector<ExactScalar> n = dense_coeffs_1var(f.num());
  std::vector<ExactScalar> d = dense_coeffs_1var(f.den());
  int vd = dense_valuation(d);
  if (vd < 0) throw symbolic_error("rational function with zero denominator");
  if (dense_valuation(n) < 0) return Laurent<ExactScalar>::zero(ExactScalar(0), order);
  int len = int(n.size() + d.size()) + order + 2 * vd + 4;
  return (padded_series(std::move(n), len) / padded_series(std::move(d), len))
      .truncated(order);
}

ExactScalar residue_at_zero_1var(const RationalFunction& h) {
  return laurent_of_rational_1var(h, 1).coeff(-1);
}

Laurent<RationalFunction> pullback_series(const FlagProblem& p,
                                          const std::vector<Laurent<RationalFunction>>& coords,
                                          int order) {
  (void)order;
  RationalFunction proto = field_ops<RationalFunction>::zero(p.curve.at(0));
  Laurent<RationalFunction> w = expand_along(p.params[1], coords, proto);
  if (w.is_zero_to_trunc() || w.valuation() != 1)
    throw symbolic_error("u_2 must have valuation 1 along the branch");
  Laurent<RationalFunction> tau_of_w = w.reversion();

  int dim = int(coords.size());
  std::vector<Laurent<RationalFunction>> Xw, dXw, dXt;
  for (int v = 0; v < dim; ++v) {
    Xw.push_back(coords[size_t(v)].compose(tau_of_w));
    dXw.push_back(Xw.back().derivative());
    dXt.push_back(base_partial(Xw.back(), p.curve_param, proto));
  }

  Laurent<RationalFunction> g =
      Laurent<RationalFunction>::zero(proto, Laurent<RationalFunction>::kMaxTrunc);
  for (const auto& term : p.form.terms) {
    Laurent<RationalFunction> R = expand_along(term.coeff, Xw, proto);
    int a = term.diffs[0], b = term.diffs[1];
    g = g + R * (dXt[size_t(a)] * dXw[size_t(b)] - dXt[size_t(b)] * dXw[size_t(a)]);
  }
  return g;
}

SymbolicFlagResidue residue_symbolic_at_flag(const FlagProblem& p, int order) {
  int o = std::max(order, 8);
  for (;; o *= 2) {
    try {
      return compute_once(p, o);
    } catch (const insufficient_order&) {
      if (o >= 128) throw symbolic_error("series truncation exhausted at order 128");
    }
  }
}

}  // namespace parshin
