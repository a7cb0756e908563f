// Problem decks: a line-oriented text format describing one flag problem,
// optional reciprocity candidates, and numeric controls.
//
// Grammar (one entry per line, '#' starts a comment):
//   [ambient]     n = 1|2                vars = x, y, z
//   [variety]     surface = <polynomial>           (omitted or 0: full ambient)
//   [flag]        param = t                        (optional, default "t")
//                 curve = <expr>, <expr>, <expr>   (components in the parameter)
//                 point = <const>, ...             (V0, Gaussian rationals)
//   [parameters]  u1 = <expr>            u2 = <expr>
//   [form]        term = <expr> : dx^dy            (one line per term; n = 1: dx)
//   [candidates]  n = 2: candidate = <name> : <curve components> : <u1> : <u2>
//                 n = 1: candidate = <name> : <const>   or   <name> : inf
//   [numeric]     delta1 = .. delta2 = .. grid = .. tol = .. engine = ..
#pragma once

#include "parshin/flag_problem.hpp"

namespace parshin {

struct deck_error : std::runtime_error {
  deck_error(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (byte offset " + std::to_string(off) + ")"),
        offset(off) {}
  size_t offset;
};

// A reciprocity candidate: for n = 2 an intermediate curve with its own
// parameters; for n = 1 a point of the line (or the point at infinity).
struct Candidate {
  std::string name;
  std::vector<RationalFunction> curve;
  std::vector<RationalFunction> params;
  std::vector<ExactScalar> point;
  bool at_infinity = false;
};

struct NumericControls {
  double delta1 = 0;  // 0: choose automatically
  double delta2 = 0;
  int grid = 64;
  double tol = 1e-10;
  std::string engine = "both";  // symbolic | numeric | both
};

struct ProblemDeck {
  FlagProblem problem;
  std::vector<Candidate> candidates;
  NumericControls numeric;
};

ProblemDeck parse_deck(const std::string& text);
ProblemDeck load_deck(const std::string& path);
std::string serialize_deck(const ProblemDeck& deck);

// The flag problem of one candidate: the deck's ambient data with the
// candidate's curve and parameters (n = 2) or base point (n = 1; the
// infinity candidate substitutes t -> 1/t and transforms the form).
FlagProblem candidate_problem(const ProblemDeck& deck, const Candidate& c);

}  // namespace parshin
