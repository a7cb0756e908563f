#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parshin/deck.hpp"
#include "parshin/expr_parse.hpp"
#include "parshin/torus.hpp"

using namespace parshin;

namespace {

std::string fixture(const std::string& name) {
  return std::string(PARSHIN_FIXTURE_DIR) + "/" + name;
}

FlagProblem problem(const std::string& deck) {
  return load_deck(fixture(deck)).problem;
}

// Golden values frozen from the quadrature oracle at N = 256.
const std::complex<double> kGoldenFig8{2.0, 0.0};
const std::complex<double> kGoldenUmbrella{2.0, 0.0};

}  // namespace

TEST_CASE("orientation calibration: +1 and -1 with tiny imaginary parts") {
  auto plus = residue_numeric_at_flag(problem("smooth.deck"));
  CHECK(std::abs(plus.total - std::complex<double>(1, 0)) < 1e-12);
  auto minus = residue_numeric_at_flag(problem("smooth_swapped.deck"));
  CHECK(std::abs(minus.total - std::complex<double>(-1, 0)) < 1e-12);
}

TEST_CASE("figure-eight matches its golden value on two tori") {
  auto res = residue_numeric_at_flag(problem("fig8.deck"), 0, 0, 256);
  REQUIRE(res.points.size() == 2);
  for (const auto& pt : res.points) CHECK(pt.covering == std::vector<int>{1, 1});
  CHECK(std::abs(res.total - kGoldenFig8) < 1e-10);
  for (const auto& comp : res.components)
    CHECK(std::abs(comp.value - std::complex<double>(1, 0)) < 1e-10);
}

TEST_CASE("umbrella matches its golden value on one double-covered torus") {
  auto res = residue_numeric_at_flag(problem("umbrella.deck"), 0, 0, 256);
  REQUIRE(res.points.size() == 1);
  CHECK(res.points[0].covering == std::vector<int>{2, 1});
  CHECK(std::abs(res.total - kGoldenUmbrella) < 1e-10);
}

TEST_CASE("residue is stable under radius halving") {
  FlagProblem p = problem("umbrella.deck");
  auto a = residue_numeric_at_flag(p, 0.5, 0.125);
  auto b = residue_numeric_at_flag(p, 0.25, 0.0625);
  CHECK(std::abs(a.total - b.total) < 1e-9);
  FlagProblem f = problem("fig8.deck");
  auto c = residue_numeric_at_flag(f, 0.5, 0.125);
  auto d = residue_numeric_at_flag(f, 0.25, 0.03125);
  CHECK(std::abs(c.total - d.total) < 1e-9);
}

TEST_CASE("real-coefficient fixtures give essentially real residues") {
  for (const char* name : {"fig8.deck", "umbrella.deck", "smooth.deck"}) {
    auto res = residue_numeric_at_flag(problem(name));
    INFO(name);
    CHECK(std::abs(res.total.imag()) < 1e-12);
  }
}

TEST_CASE("residue is invariant under admissible parameter changes") {
  auto a = residue_numeric_at_flag(problem("umbrella.deck"));
  auto b = residue_numeric_at_flag(problem("umbrella_alt.deck"));
  CHECK(std::abs(a.total - b.total) < 1e-9);
  auto c = residue_numeric_at_flag(problem("fig8.deck"));
  auto d = residue_numeric_at_flag(problem("fig8_alt.deck"));
  CHECK(std::abs(c.total - d.total) < 1e-9);
}

TEST_CASE("automatic radius selection returns admissible radii") {
  for (const char* name : {"fig8.deck", "umbrella.deck", "smooth.deck"}) {
    RadiiChoice rc = choose_radii(problem(name));
    INFO(name);
    CHECK(rc.delta1 > 0);
    CHECK(rc.delta2 > 0);
    CHECK(rc.delta2 <= rc.delta1);
  }
}

TEST_CASE("inadmissible radii are rejected rather than silently wrong") {
  // the figure-eight slice folds at |u2| ~ 0.385 * delta1^2: delta2 = 0.1
  // at delta1 = 0.25 puts the torus beyond the fold
  FlagProblem p = problem("fig8.deck");
  CHECK_THROWS(residue_numeric_at_flag(p, 0.25, 0.1));
}

TEST_CASE("quadrature error decays at least 10x per grid doubling") {
  // a pole at x = 0.6 near the |x| = 0.5 circle slows spectral convergence
  // into the observable range
  FlagProblem p = problem("smooth.deck");
  p.form.terms.clear();
  p.form.terms.push_back(
      {parse_rational("1/(x*y*(1 - 5*x/3))", p.vars), {0, 1}});
  auto points = enumerate_parshin_points(p, 0.5, 0.125);
  REQUIRE(points.size() == 1);
  TorusCycle cyc = track_torus(p, points[0], 0.5, 0.125, 128);
  QuadratureResult q = integrate_torus(p.form, cyc, p);
  // history holds values at N = 16, 32, 64, 128; compare against the exact
  // residue 1
  REQUIRE(q.grids.size() >= 4);
  std::vector<double> err;
  for (size_t k = 0; k < q.history.size(); ++k)
    err.push_back(std::abs(q.history[k] - std::complex<double>(1, 0)));
  for (size_t k = 0; k + 1 < err.size(); ++k) {
    if (q.grids[k] < 32) continue;
    INFO("N=" << q.grids[k] << " err=" << err[k] << " next=" << err[k + 1]);
    CHECK(err[k] >= 10.0 * err[k + 1]);
  }
}

TEST_CASE("n = 1 numeric residue agrees with partial fractions") {
  auto res = residue_numeric_at_flag(problem("line_simple.deck"));
  CHECK(std::abs(res.total - std::complex<double>(-1, 0)) < 1e-10);
  auto cusp = residue_numeric_at_flag(problem("cusp.deck"));
  CHECK(std::abs(cusp.total - std::complex<double>(2, 0)) < 1e-9);
}
