// Orchestration: runs the symbolic and numeric engines on flag problems,
// cross-checks them, and implements the reciprocity and vanishing harnesses.
#pragma once

#include "parshin/deck.hpp"
#include "parshin/residue_symbolic.hpp"
#include "parshin/torus.hpp"

namespace parshin {

inline constexpr double kCrossCheckTol = 1e-8;
inline constexpr double kReciprocityTol = 1e-9;
inline constexpr double kVanishTol = 1e-10;

struct ComputeOptions {
  std::string engine = "both";  // symbolic | numeric | both
  double delta1 = 0;            // 0: choose automatically
  double delta2 = 0;
  int grid = 64;
  double tol = 1e-10;

  static ComputeOptions from_deck(const ProblemDeck& deck) {
    ComputeOptions o;
    o.engine = deck.numeric.engine;
    o.delta1 = deck.numeric.delta1;
    o.delta2 = deck.numeric.delta2;
    o.grid = deck.numeric.grid;
    o.tol = deck.numeric.tol;
    return o;
  }
};

struct SymbolicOutcome {
  bool ran = false, ok = false, applicable = false;
  std::string error, reason;
  std::vector<ExactScalar> per_point;
  ExactScalar total;
};

struct NumericOutcome {
  bool ran = false, ok = false;
  std::string error;
  NumericFlagResidue res;
};

struct FlagResult {
  std::string name;
  ValidationReport validation;
  SymbolicOutcome symbolic;
  NumericOutcome numeric;
  bool cross_ran = false;
  bool cross_ok = true;
  double cross_diff = 0;

  // True when at least one engine delivered a residue value.
  bool has_value() const {
    return (symbolic.ok && symbolic.applicable) || numeric.ok;
  }
  // Exact value available (symbolic engine succeeded).
  bool exact() const { return symbolic.ok && symbolic.applicable; }
  std::complex<double> value() const {
    if (exact()) return symbolic.total.to_complex();
    return numeric.res.total;
  }
  // All requested engines succeeded and agree.
  bool pass() const {
    if (!validation.ok() || !has_value() || !cross_ok) return false;
    if (symbolic.ran && !symbolic.ok) return false;
    if (numeric.ran && !numeric.ok) return false;
    return true;
  }
};

FlagResult compute_flag(const FlagProblem& p, const ComputeOptions& opts,
                        const std::string& name = "flag");

struct ReciprocityResult {
  std::vector<FlagResult> flags;
  std::complex<double> sum{0, 0};
  bool all_exact = false;
  ExactScalar exact_sum;
  bool pass = false;
};

// Residues over every candidate flag, computed concurrently, merged in deck
// order; PASS when every flag computes cleanly and |sum| < 1e-9 (exact zero
// when all summands are exact).
ReciprocityResult verify_reciprocity(const ProblemDeck& deck, const ComputeOptions& opts);

struct VanishResult {
  FlagResult flag;
  bool misconfigured = false;  // off-flag curve lies inside the polar set
  bool pass = false;
};

// Asserts the residue at the deck's (off-)flag vanishes: exactly 0 from the
// symbolic engine, below 1e-10 from the numeric engine.
VanishResult vanishing_check(const ProblemDeck& deck, const ComputeOptions& opts);

}  // namespace parshin
