#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parshin/deck.hpp"
#include "parshin/expr_parse.hpp"
#include "parshin/residue_symbolic.hpp"

using namespace parshin;

namespace {

std::string fixture(const std::string& name) {
  return std::string(PARSHIN_FIXTURE_DIR) + "/" + name;
}

SymbolicFlagResidue run(const std::string& deck) {
  return residue_symbolic_at_flag(load_deck(fixture(deck)).problem);
}

}  // namespace

TEST_CASE("classical residue of a univariate rational function") {
  VarList tv = {"t"};
  CHECK(residue_at_zero_1var(parse_rational("(3*t^2 + 2)/(t^3 + t)", tv)) ==
        ExactScalar(2));
  CHECK(residue_at_zero_1var(parse_rational("1/(t*(t - 1))", tv)) == ExactScalar(-1));
  CHECK(residue_at_zero_1var(parse_rational("1/(t - 1)", tv)).is_zero());
  CHECK(residue_at_zero_1var(parse_rational("(1 + t)/t^2", tv)).is_one());
  auto s = laurent_of_rational_1var(parse_rational("1/(1 - t)", tv), 6);
  for (int k = 0; k < 6; ++k) CHECK(s.coeff(k).is_one());
}

TEST_CASE("orientation calibration gives +1 and -1") {
  auto plus = run("smooth.deck");
  REQUIRE(plus.applicable);
  CHECK(plus.total == ExactScalar(1));
  auto minus = run("smooth_swapped.deck");
  REQUIRE(minus.applicable);
  CHECK(minus.total == ExactScalar(-1));
}

TEST_CASE("figure-eight residue is exactly 1 + 1") {
  auto r = run("fig8.deck");
  REQUIRE(r.applicable);
  REQUIRE(r.per_point.size() == 2);
  CHECK(r.per_point[0].is_one());
  CHECK(r.per_point[1].is_one());
  CHECK(r.total == ExactScalar(2));
}

TEST_CASE("umbrella branches are irrational so the exact engine declines") {
  auto r = run("umbrella.deck");
  CHECK(!r.applicable);
  CHECK(!r.reason.empty());
}

TEST_CASE("flag residue is invariant under admissible parameter changes") {
  auto r = run("fig8_alt.deck");
  REQUIRE(r.applicable);
  CHECK(r.total == ExactScalar(2));
}

TEST_CASE("n = 1 residues: simple pole, cusp, node") {
  auto line = run("line_simple.deck");
  REQUIRE(line.applicable);
  CHECK(line.total == ExactScalar(-1));

  auto cusp = run("cusp.deck");
  REQUIRE(cusp.applicable);
  CHECK(cusp.total == ExactScalar(2));  // dx/x picks up the ramification

  FlagProblem node;
  node.n = 1;
  node.vars = {"x", "y"};
  node.surface = parse_polynomial("y^2 - x^2 - x^3", node.vars);
  node.point = {ExactScalar(0), ExactScalar(0)};
  node.params = {parse_rational("x", node.vars)};
  node.form.terms.push_back({parse_rational("y/x^2", node.vars), {0}});
  auto r = residue_symbolic_at_flag(node);
  REQUIRE(r.applicable);
  REQUIRE(r.per_point.size() == 2);
  CHECK(r.total.is_zero());  // the two sheets contribute +1 and -1
  CHECK((r.per_point[0] + r.per_point[1]).is_zero());
  CHECK(!r.per_point[0].is_zero());
}

TEST_CASE("off-flag residues vanish exactly") {
  for (const char* name : {"vanish_diagonal.deck", "vanish_parabola.deck"}) {
    auto r = run(name);
    INFO(name);
    REQUIRE(r.applicable);
    CHECK(r.total.is_zero());
  }
}

TEST_CASE("pullback of the smooth calibration form is (t*w)^(-1)") {
  FlagProblem p = load_deck(fixture("smooth.deck")).problem;
  RationalFunction one = RationalFunction(p.curve[0].vars(), ExactScalar(1));
  std::vector<Laurent<RationalFunction>> coords;
  coords.push_back(Laurent<RationalFunction>::constant(p.curve[0], 8));
  coords.push_back(Laurent<RationalFunction>::monomial(one, 1, 8));
  auto g = pullback_series(p, coords, 8);
  CHECK(g.valuation() == -1);
  VarList tv = p.curve[0].vars();
  CHECK(g.coeff(-1) == parse_rational("1/t", tv));
  CHECK(g.coeff(0).is_zero());
}
