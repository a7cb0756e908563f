// Exact residue computation: pull the form back along each local branch,
// re-expand in the second parameter, extract the u_2^{-1} coefficient, then
// take the classical residue of the resulting 1-form along V1.
#pragma once

#include "parshin/flag_problem.hpp"

namespace parshin {

struct symbolic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymbolicFlagResidue {
  bool applicable = false;  // false: delegate to the numeric engine
  std::string reason;       // why not applicable
  std::vector<ExactScalar> per_point;
  ExactScalar total;
};

// Classical residue at t = 0 of a univariate rational function (exact).
ExactScalar residue_at_zero_1var(const RationalFunction& h);

// Laurent expansion at t = 0 of a univariate rational function.
Laurent<ExactScalar> laurent_of_rational_1var(const RationalFunction& f, int order);

// The pulled-back 2-form coefficient g(t, w) of one slice branch, as a
// Laurent series in w = u_2 with coefficients rational in the curve
// parameter: omega = g dt ^ dw along the branch.  Exposed for tests.
Laurent<RationalFunction> pullback_series(const FlagProblem& p,
                                          const std::vector<Laurent<RationalFunction>>& coords,
                                          int order);

// Exact residue at the flag; applicable when every local branch is rational
// over the base field (and hence monodromy-invariant).
SymbolicFlagResidue residue_symbolic_at_flag(const FlagProblem& p, int order = 16);

}  // namespace parshin
