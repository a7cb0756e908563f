// Microbenchmarks for the hot paths: polynomial and series arithmetic,
// path tracking, and torus quadrature.
#include <benchmark/benchmark.h>

#include "parshin/expr_parse.hpp"
#include "parshin/torus.hpp"

namespace {

using namespace parshin;

FlagProblem umbrella_problem() {
  FlagProblem p;
  p.n = 2;
  p.vars = {"x", "y", "z"};
  p.surface = parse_polynomial("y^2 - z*x^2", p.vars);
  VarList tv = {"t"};
  p.curve = {parse_rational("0", tv), parse_rational("0", tv), parse_rational("t", tv)};
  p.point = {ExactScalar(0), ExactScalar(0), ExactScalar(0)};
  p.params = {parse_rational("z", p.vars), parse_rational("y", p.vars)};
  p.form.terms.push_back({parse_rational("1/(z*y)", p.vars), {2, 1}});
  return p;
}

void BM_PolynomialMultiply(benchmark::State& state) {
  VarList vars = {"x", "y", "z"};
  Polynomial a = parse_polynomial("(x + 2*y + 3*z + 1)^6", vars);
  Polynomial b = parse_polynomial("(x - y + z - 2)^6", vars);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialMultiply);

void BM_LaurentMultiply(benchmark::State& state) {
  int order = 64;
  std::vector<ExactScalar> c;
  for (int k = 0; k < order; ++k) c.push_back(ExactScalar(k + 1, 2 * k + 3));
  ExactSeries s = ExactSeries::from_coeffs(ExactScalar(0), -2, c, order - 2);
  for (auto _ : state) benchmark::DoNotOptimize(s * s);
}
BENCHMARK(BM_LaurentMultiply);

void BM_TrackCircle(benchmark::State& state) {
  FlagProblem p = umbrella_problem();
  double d1 = 0.5, d2 = 0.125;
  AmbientSystem sys(p);
  StartPoints sp = start_points(p, d1, d2);
  std::vector<std::complex<double>> fixed{d1, d2};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        track_circle(sys, sp.points[0], fixed, 0, d1, 0.0, 2 * M_PI, 64));
}
BENCHMARK(BM_TrackCircle);

void BM_TorusQuadrature(benchmark::State& state) {
  FlagProblem p = umbrella_problem();
  double d1 = 0.5, d2 = 0.125;
  auto points = enumerate_parshin_points(p, d1, d2);
  for (auto _ : state) {
    TorusCycle cyc = track_torus(p, points[0], d1, d2, 16);
    benchmark::DoNotOptimize(integrate_torus(p.form, cyc, p));
  }
}
BENCHMARK(BM_TorusQuadrature);

}  // namespace

BENCHMARK_MAIN();
