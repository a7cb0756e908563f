#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parshin/expr_parse.hpp"
#include "parshin/puiseux.hpp"

using namespace parshin;

namespace {

BiPoly<ExactScalar> exact_germ(const std::string& expr) {
  VarList vars = {"s", "t"};
  Polynomial p = parse_polynomial(expr, vars);
  std::vector<ExactScalar> base{ExactScalar(0), ExactScalar(0)};
  return plane_germ<ExactScalar>(p, base, 0, 1, [](const ExactScalar& c) { return c; });
}

BiPoly<std::complex<double>> float_germ(const std::string& expr) {
  VarList vars = {"s", "t"};
  Polynomial p = parse_polynomial(expr, vars);
  std::vector<std::complex<double>> base{0.0, 0.0};
  return plane_germ<std::complex<double>>(p, base, 0, 1,
                                          [](const ExactScalar& c) { return c.to_complex(); });
}

// Binomial series oracle: the coefficient of s^(k+1) in s*sqrt(1+s) is
// C(1/2, k), computed independently of the expansion code.
ExactScalar half_binomial(int k) {
  mpq_class c = 1;
  for (int j = 1; j <= k; ++j) c *= (mpq_class(1, 2) - (j - 1)) / j;
  return ExactScalar(c);
}

}  // namespace

TEST_CASE("node branches match the binomial series oracle") {
  auto out = newton_puiseux(exact_germ("t^2 - s^2*(1 + s)"), 10);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 2);
  CHECK(out.expected_sheets == 2);
  for (const auto& b : out.branches) {
    CHECK(b.ram == 1);
    CHECK(branch_residual(exact_germ("t^2 - s^2*(1 + s)"), b).is_zero_to_trunc());
  }
  // one branch is +s*sqrt(1+s), the other -s*sqrt(1+s)
  bool found_plus = false, found_minus = false;
  for (const auto& b : out.branches) {
    bool plus = b.t_series.coeff(1).is_one();
    bool all_match = true;
    for (int k = 0; k + 1 < 9; ++k) {
      ExactScalar want = plus ? half_binomial(k) : -half_binomial(k);
      if (b.t_series.coeff(k + 1) != want) all_match = false;
    }
    CHECK(all_match);
    (plus ? found_plus : found_minus) = true;
  }
  CHECK(found_plus);
  CHECK(found_minus);
}

TEST_CASE("cusp has one branch of ramification 2") {
  auto germ = exact_germ("t^2 - s^3");
  auto out = newton_puiseux(germ, 8);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 1);
  CHECK(out.branches[0].ram == 2);
  CHECK(branch_residual(germ, out.branches[0]).is_zero_to_trunc());
  // s = tau^2, t = tau^3
  CHECK(out.branches[0].s_series.valuation() == 2);
  CHECK(out.branches[0].t_series.valuation() == 3);
}

TEST_CASE("pure ramification t^3 = s") {
  auto out = newton_puiseux(exact_germ("t^3 - s"), 9);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 1);
  CHECK(out.branches[0].ram == 3);
  auto fout = newton_puiseux(float_germ("t^3 - s"), 9);
  REQUIRE(fout.complete);
  REQUIRE(fout.branches.size() == 1);
  CHECK(fout.branches[0].ram == 3);
}

TEST_CASE("t^4 = s^2 splits into two ramified branches") {
  auto out = newton_puiseux(exact_germ("t^4 - s^2"), 8);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 2);
  int total = 0;
  for (const auto& b : out.branches) total += b.ram;
  CHECK(total == out.expected_sheets);
  CHECK(out.branches[0].ram == 2);
  CHECK(out.branches[1].ram == 2);
}

TEST_CASE("products of smooth factors split completely") {
  auto germ = exact_germ("(t - s)*(t + s - s^2)*(t - 2*s)");
  auto out = newton_puiseux(germ, 8);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 3);
  for (const auto& b : out.branches) {
    CHECK(b.ram == 1);
    CHECK(branch_residual(germ, b).is_zero_to_trunc());
  }
}

TEST_CASE("float germs tolerate numeric debris in the transforms") {
  auto out = newton_puiseux(float_germ("(t - s)*(t + s - s^2)"), 8);
  REQUIRE(out.complete);
  REQUIRE(out.branches.size() == 2);
  auto germ = float_germ("(t - s)*(t + s - s^2)");
  for (const auto& b : out.branches) {
    auto res = branch_residual(germ, b);
    double mx = 0;
    for (int k = res.low(); k < res.truncation_order(); ++k)
      mx = std::max(mx, std::abs(res.coeff(k)));
    CHECK(mx < 1e-10);
  }
}

TEST_CASE("irrational slopes are reported as incomplete over the exact field") {
  auto out = newton_puiseux(exact_germ("t^2 - 2*s^2"), 8);
  CHECK(!out.complete);  // sqrt(2) is not a Gaussian rational
}

TEST_CASE("branch count accounts for all sheets") {
  auto out = newton_puiseux(exact_germ("t^2*(t - s) - s^5"), 10);
  REQUIRE(out.complete);
  int total = 0;
  for (const auto& b : out.branches) total += b.ram;
  CHECK(total == out.expected_sheets);
  CHECK(out.expected_sheets == 3);
}
