#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parshin/expr_parse.hpp"
#include "parshin/laurent.hpp"

using namespace parshin;

TEST_CASE("gaussian rational arithmetic") {
  ExactScalar a(3, 4);
  ExactScalar b = ExactScalar::i();
  ExactScalar c = (a + b) * (a - b);  // a^2 + 1
  CHECK(c == ExactScalar(25, 16));
  CHECK((b * b) == ExactScalar(-1));
  CHECK((ExactScalar(1) / b) == -b);
  CHECK(a.pow(3) == ExactScalar(27, 64));
  CHECK(ExactScalar::parse("-3/4") == -a);
  CHECK(ExactScalar::parse("2i") == b + b);
  CHECK((a / a).is_one());
}

TEST_CASE("scalar rendering is re-parseable") {
  VarList none = {};
  for (const ExactScalar& v :
       {ExactScalar(7, 3), -ExactScalar(1, 2), ExactScalar::i(),
        ExactScalar(mpq_class(2), mpq_class(-5)),
        ExactScalar(mpq_class(-1, 2), mpq_class(3, 7))}) {
    RationalFunction r = parse_rational(v.str(), none);
    REQUIRE(r.is_constant());
    CHECK(r.constant_value() == v);
  }
}

TEST_CASE("polynomial parse, evaluate, differentiate") {
  VarList vars = {"x", "y"};
  Polynomial p = parse_polynomial("(x + y)^3 - x^3 - y^3", vars);
  // 3x^2 y + 3x y^2
  std::vector<ExactScalar> pt{ExactScalar(2), ExactScalar(3)};
  CHECK(p.eval(std::span<const ExactScalar>(pt)) == ExactScalar(90));
  Polynomial px = p.partial("x");
  CHECK(px.eval(std::span<const ExactScalar>(pt)) == ExactScalar(63));  // 6xy+3y^2
  CHECK(parse_polynomial(p.str(), vars) - p == Polynomial(vars));
}

TEST_CASE("rational function normalization cancels common factors") {
  VarList vars = {"x"};
  RationalFunction r = parse_rational("(x^2 - 1)/(x - 1)", vars);
  CHECK(r == parse_rational("x + 1", vars));
  CHECK(r.den().is_constant());
  RationalFunction s = parse_rational("(x^3 + x)/(x^2 + 1)", vars);
  CHECK(s == parse_rational("x", vars));
}

TEST_CASE("dense univariate helpers") {
  VarList vars = {"x"};
  auto a = dense_coeffs_1var(parse_polynomial("x^3 - x", vars));
  auto b = dense_coeffs_1var(parse_polynomial("x^2 - 1", vars));
  auto g = poly_gcd_1var(a, b);
  // gcd is x^2 - 1 up to scale
  REQUIRE(g.size() == 3);
  CHECK(g[1].is_zero());
  CHECK(g[0] / g[2] == ExactScalar(-1));
  auto [q, rem] = poly_divmod_1var(a, b);
  REQUIRE(q.size() == 2);
  CHECK(q[1].is_one());
  for (const auto& c : rem) CHECK(c.is_zero());
}

TEST_CASE("laurent arithmetic and truncation accounting") {
  ExactScalar z(0);
  auto u = ExactSeries::monomial(ExactScalar(1), 1, 10);
  auto f = ExactSeries::monomial(ExactScalar(1), -2, 10) + u;  // u^-2 + u
  auto g = f * f;
  CHECK(g.coeff(-4) == ExactScalar(1));
  CHECK(g.coeff(-1) == ExactScalar(2));
  CHECK(g.coeff(2) == ExactScalar(1));
  CHECK_THROWS_AS((void)g.coeff(100), insufficient_order);
  auto inv = (ExactSeries::constant(ExactScalar(1), 8) - u).inverse();
  for (int k = 0; k < 8; ++k) CHECK(inv.coeff(k) == ExactScalar(1));  // geometric
  auto d = inv.derivative();
  CHECK(d.coeff(1) == ExactScalar(2));
}

TEST_CASE("composition handles outer series of positive valuation") {
  auto u = ExactSeries::monomial(ExactScalar(1), 1, 8);
  auto f = u * u + u * u * u;        // u^2 + u^3
  auto inner = u + u * u;            // v + v^2
  auto c = f.compose(inner);
  CHECK(c.coeff(2) == ExactScalar(1));
  CHECK(c.coeff(3) == ExactScalar(3));
  CHECK(c.coeff(4) == ExactScalar(4));
}

TEST_CASE("reversion is the compositional inverse") {
  auto u = ExactSeries::monomial(ExactScalar(1), 1, 12);
  auto w = u + u * u + u * u * u.scaled(ExactScalar(1, 3));
  auto g = w.reversion();
  auto id = w.compose(g) - u;
  CHECK(id.is_zero_to_trunc());
  auto id2 = g.compose(w) - u;
  CHECK(id2.is_zero_to_trunc());
}
