#include "parshin/engine.hpp"

#include <future>

namespace parshin {
namespace {

// True when some form denominator vanishes identically along the flag curve,
// i.e. the curve lies inside the polar set of the form.
bool curve_inside_polar_set(const FlagProblem& p) {
  if (p.curve.empty()) return false;
  for (const auto& term : p.form.terms) {
    RationalFunction den(term.coeff.den());
    if (compose_on_curve(den, p).is_zero()) return true;
  }
  return false;
}

}  // namespace

FlagResult compute_flag(const FlagProblem& p, const ComputeOptions& opts,
                        const std::string& name) {
  FlagResult r;
  r.name = name;
  try {
    r.validation = validate_parameters(p);
  } catch (const std::exception& e) {
    r.validation.violations.push_back(e.what());
  }
  if (!r.validation.ok()) return r;

  if (opts.engine != "numeric") {
    r.symbolic.ran = true;
    try {
      SymbolicFlagResidue s = residue_symbolic_at_flag(p);
      r.symbolic.ok = true;
      r.symbolic.applicable = s.applicable;
      r.symbolic.reason = s.reason;
      r.symbolic.per_point = s.per_point;
      r.symbolic.total = s.total;
    } catch (const std::exception& e) {
      r.symbolic.error = e.what();
    }
  }
  if (opts.engine != "symbolic") {
    r.numeric.ran = true;
    try {
      r.numeric.res =
          residue_numeric_at_flag(p, opts.delta1, opts.delta2, opts.grid, opts.tol);
      r.numeric.ok = true;
    } catch (const std::exception& e) {
      r.numeric.error = e.what();
    }
  }
  if (r.symbolic.ok && r.symbolic.applicable && r.numeric.ok) {
    r.cross_ran = true;
    r.cross_diff = std::abs(r.symbolic.total.to_complex() - r.numeric.res.total);
    r.cross_ok = r.cross_diff < kCrossCheckTol;
  }
  return r;
}

ReciprocityResult verify_reciprocity(const ProblemDeck& deck,
                                     const ComputeOptions& opts) {
  ReciprocityResult out;
  if (deck.candidates.empty())
    throw flag_error("reciprocity needs a [candidates] section in the deck");

  std::vector<std::future<FlagResult>> jobs;
  jobs.reserve(deck.candidates.size());
  for (const auto& c : deck.candidates) {
    jobs.push_back(std::async(std::launch::async, [&deck, &opts, &c]() {
      try {
        return compute_flag(candidate_problem(deck, c), opts, c.name);
      } catch (const std::exception& e) {
        FlagResult bad;
        bad.name = c.name;
        bad.validation.violations.push_back(e.what());
        return bad;
      }
    }));
  }
  // deterministic ordered merge in deck order
  for (auto& j : jobs) out.flags.push_back(j.get());

  out.all_exact = true;
  out.exact_sum = ExactScalar(0);
  bool all_pass = true;
  for (const auto& f : out.flags) {
    all_pass = all_pass && f.pass();
    if (f.has_value()) out.sum += f.value();
    if (f.exact())
      out.exact_sum = out.exact_sum + f.symbolic.total;
    else
      out.all_exact = false;
  }
  if (out.all_exact)
    out.pass = all_pass && out.exact_sum.is_zero();
  else
    out.pass = all_pass && std::abs(out.sum) < kReciprocityTol;
  return out;
}

VanishResult vanishing_check(const ProblemDeck& deck, const ComputeOptions& opts) {
  VanishResult out;
  out.flag.name = "off-flag";
  if (curve_inside_polar_set(deck.problem)) {
    out.misconfigured = true;
    out.flag.validation.notes.push_back(
        "off-flag curve lies inside the polar set of the form");
    return out;
  }
  out.flag = compute_flag(deck.problem, opts, "off-flag");
  bool ok = out.flag.validation.ok() && out.flag.has_value();
  if (out.flag.symbolic.ok && out.flag.symbolic.applicable)
    ok = ok && out.flag.symbolic.total.is_zero();
  if (out.flag.numeric.ran) ok = ok && out.flag.numeric.ok;
  if (out.flag.numeric.ok) ok = ok && std::abs(out.flag.numeric.res.total) < kVanishTol;
  out.pass = ok;
  return out;
}

}  // namespace parshin
