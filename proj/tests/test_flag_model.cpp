#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parshin/deck.hpp"
#include "parshin/expr_parse.hpp"
#include "parshin/monodromy.hpp"

using namespace parshin;

namespace {

std::string fixture(const std::string& name) {
  return std::string(PARSHIN_FIXTURE_DIR) + "/" + name;
}

FlagProblem fig8() { return load_deck(fixture("fig8.deck")).problem; }
FlagProblem umbrella() { return load_deck(fixture("umbrella.deck")).problem; }

}  // namespace

TEST_CASE("valuation and composition helpers") {
  VarList tv = {"t"};
  CHECK(valuation_at_zero(parse_rational("t^3/(t - 1)", tv)) == 3);
  CHECK(valuation_at_zero(parse_rational("(t^2 + t)/t^3", tv)) == -2);
  FlagProblem p = fig8();
  RationalFunction u1_on_curve = compose_on_curve(p.params[0], p);
  CHECK(valuation_at_zero(u1_on_curve) == 1);
  CHECK(compose_on_curve(p.params[1], p).is_zero());
}

TEST_CASE("transverse directions exclude the curve tangent") {
  auto dirs = transverse_dirs(fig8());
  CHECK(dirs.first == 0);
  CHECK(dirs.second == 1);
}

TEST_CASE("fixture flags validate cleanly") {
  for (const char* name : {"fig8.deck", "umbrella.deck", "smooth.deck",
                           "fig8_alt.deck", "umbrella_alt.deck", "cusp.deck"}) {
    ValidationReport rep = validate_parameters(load_deck(fixture(name)).problem);
    INFO(name);
    for (const auto& v : rep.violations) INFO(v);
    CHECK(rep.ok());
  }
}

TEST_CASE("fig8 slice valuations are certified exactly") {
  ValidationReport rep = validate_parameters(fig8());
  REQUIRE(rep.ok());
  bool exact_note = false;
  for (const auto& n : rep.notes)
    exact_note = exact_note || n.find("exactly") != std::string::npos;
  CHECK(exact_note);
}

TEST_CASE("bad parameters are rejected with explanations") {
  FlagProblem p = fig8();
  p.params[0] = parse_rational("z^2", p.vars);
  ValidationReport rep = validate_parameters(p);
  CHECK(!rep.ok());

  FlagProblem q = fig8();
  q.point = {ExactScalar(1), ExactScalar(0), ExactScalar(0)};
  CHECK(!validate_parameters(q).ok());

  FlagProblem r = fig8();
  VarList tv = {"t"};
  r.curve = {parse_rational("t", tv), parse_rational("0", tv), parse_rational("t", tv)};
  CHECK(!validate_parameters(r).ok());

  FlagProblem s = fig8();
  s.params[1] = parse_rational("x + y + 1", s.vars);  // does not vanish at V0
  CHECK(!validate_parameters(s).ok());
}

TEST_CASE("start points are separated branch sheets") {
  StartPoints sp = start_points(fig8(), 0.5, 0.125);
  REQUIRE(sp.points.size() == 2);
  CHECK((sp.points[0] - sp.points[1]).norm() > 1e-3);
  StartPoints su = start_points(umbrella(), 0.5, 0.125);
  CHECK(su.points.size() == 2);  // two sheets of the double cover
}

TEST_CASE("fig8 monodromy is trivial with two Parshin points") {
  auto points = enumerate_parshin_points(fig8(), 0.5, 0.125);
  REQUIRE(points.size() == 2);
  for (const auto& pt : points) {
    CHECK(pt.members.size() == 1);
    CHECK(pt.covering == std::vector<int>{1, 1});
  }
  auto perm = monodromy_along_loop(fig8(), 0.5, 0.125);
  CHECK(perm.map == std::vector<int>{0, 1});
}

TEST_CASE("umbrella monodromy is a transposition with one Parshin point") {
  auto points = enumerate_parshin_points(umbrella(), 0.5, 0.125);
  REQUIRE(points.size() == 1);
  CHECK(points[0].members.size() == 2);
  CHECK(points[0].covering == std::vector<int>{2, 1});
  auto perm = monodromy_along_loop(umbrella(), 0.5, 0.125);
  CHECK(perm.map == std::vector<int>{1, 0});
}

TEST_CASE("n = 1 enumeration lists one point per curve branch") {
  FlagProblem p = load_deck(fixture("cusp.deck")).problem;
  auto points = enumerate_parshin_points(p, 0.25, 0);
  REQUIRE(points.size() == 1);
  CHECK(points[0].covering == std::vector<int>{2});
}
