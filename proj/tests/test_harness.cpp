#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "parshin/expr_parse.hpp"
#include "parshin/report.hpp"

using namespace parshin;

namespace {

std::string fixture(const std::string& name) {
  return std::string(PARSHIN_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kAllDecks[] = {
    "smooth.deck",         "smooth_swapped.deck", "three_lines.deck",
    "fig8.deck",           "fig8_alt.deck",       "fig8_reciprocity.deck",
    "umbrella.deck",       "umbrella_alt.deck",   "vanish_diagonal.deck",
    "vanish_parabola.deck", "vanish_fig8.deck",   "line_simple.deck",
    "line_tdt.deck",       "cusp.deck"};

}  // namespace

TEST_CASE("deck round-trip: parse -> serialize -> parse is the identity") {
  for (const char* name : kAllDecks) {
    INFO(name);
    ProblemDeck d1 = parse_deck(slurp(fixture(name)));
    std::string s1 = serialize_deck(d1);
    ProblemDeck d2 = parse_deck(s1);
    std::string s2 = serialize_deck(d2);
    CHECK(s1 == s2);  // injective rendering: equal text means equal data
  }
}

TEST_CASE("deck errors carry byte offsets") {
  std::string text = "[ambient]\nn = 2\nvars = x, y\n\n[flag]\npoint = 0, @\n";
  try {
    parse_deck(text);
    FAIL("expected a deck error");
  } catch (const deck_error& e) {
    CHECK(e.offset == text.find('@'));
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }

  std::string bad_section = "[ambientt]\nn = 2\n";
  try {
    parse_deck(bad_section);
    FAIL("expected a deck error");
  } catch (const deck_error& e) {
    CHECK(e.offset == 0);
  }

  std::string bad_var = "[ambient]\nn = 2\nvars = x, y\n\n[parameters]\nu1 = w\n";
  try {
    parse_deck(bad_var);
    FAIL("expected a deck error");
  } catch (const deck_error& e) {
    CHECK(e.offset == bad_var.find('w', bad_var.find("u1")));
  }
}

TEST_CASE("candidate problems inherit ambient data and validate") {
  ProblemDeck deck = parse_deck(slurp(fixture("three_lines.deck")));
  REQUIRE(deck.candidates.size() == 3);
  for (const auto& c : deck.candidates) {
    FlagProblem p = candidate_problem(deck, c);
    INFO(c.name);
    CHECK(validate_parameters(p).ok());
  }
}

TEST_CASE("the infinity chart transforms the form by t -> 1/t") {
  ProblemDeck deck = parse_deck(slurp(fixture("line_tdt.deck")));
  REQUIRE(deck.candidates.size() == 1);
  REQUIRE(deck.candidates[0].at_infinity);
  FlagProblem p = candidate_problem(deck, deck.candidates[0]);
  // t dt pulls back to -1/t^3 dt
  CHECK(p.form.terms[0].coeff == parse_rational("-1/t^3", p.vars));
  CHECK(p.point[0].is_zero());
}

TEST_CASE("JSON reports are deterministic and carry the schema version") {
  ProblemDeck deck = parse_deck(slurp(fixture("smooth.deck")));
  ComputeOptions opts = ComputeOptions::from_deck(deck);
  FlagResult r1 = compute_flag(deck.problem, opts);
  FlagResult r2 = compute_flag(deck.problem, opts);
  std::string j1 = json_compute_report(r1);
  std::string j2 = json_compute_report(r2);
  CHECK(j1 == j2);
  CHECK(j1.find("\"schema\": 1") != std::string::npos);
  CHECK(j1.find("\"verdict\": \"PASS\"") != std::string::npos);
  CHECK(j1.find("\"total\": \"1\"") != std::string::npos);
}

TEST_CASE("reciprocity report prints the sum of the printed summands") {
  ProblemDeck deck = parse_deck(slurp(fixture("three_lines.deck")));
  ReciprocityResult r = verify_reciprocity(deck, ComputeOptions::from_deck(deck));
  CHECK(r.pass);
  CHECK(r.all_exact);
  CHECK(r.exact_sum.is_zero());
  REQUIRE(r.flags.size() == 3);
  CHECK(r.flags[0].symbolic.total == ExactScalar(1));
  CHECK(r.flags[1].symbolic.total == ExactScalar(-1));
  CHECK(r.flags[2].symbolic.total.is_zero());
  std::complex<double> replay = 0;
  for (const auto& f : r.flags) replay += f.value();
  CHECK(replay == r.sum);  // exact double identity, no re-rounding
  std::string j = json_reciprocity_report(r);
  CHECK(j.find("\"exact_sum\": \"0\"") != std::string::npos);
}

TEST_CASE("convergence CSV has the documented columns") {
  ProblemDeck deck = parse_deck(slurp(fixture("smooth.deck")));
  auto res = residue_numeric_at_flag(deck.problem);
  std::string csv = csv_convergence(res);
  CHECK(csv.rfind("N,real,imag,abs_change\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 3);
}

TEST_CASE("cross-check verdict fails when engines disagree") {
  ProblemDeck deck = parse_deck(slurp(fixture("smooth.deck")));
  ComputeOptions opts = ComputeOptions::from_deck(deck);
  FlagResult r = compute_flag(deck.problem, opts);
  REQUIRE(r.cross_ran);
  CHECK(r.cross_ok);
  CHECK(r.cross_diff < 1e-8);
  r.cross_ok = false;  // simulate a disagreement
  CHECK(!r.pass());
  std::string j = json_compute_report(r);
  CHECK(j.find("\"verdict\": \"FAIL\"") != std::string::npos);
}
