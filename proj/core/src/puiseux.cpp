#include "parshin/puiseux.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace parshin {
namespace {

// ---------- root solvers ----------

std::vector<std::complex<double>> companion_roots(
    const std::vector<std::complex<double>>& coeffs) {
  // coeffs[k] multiplies x^k; leading coefficient nonzero
  int n = int(coeffs.size()) - 1;
  if (n <= 0) return {};
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) M(k, n - 1) = -coeffs[k] / coeffs[n];
  for (int k = 1; k < n; ++k) M(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  std::vector<std::complex<double>> roots(n);
  for (int k = 0; k < n; ++k) roots[k] = es.eigenvalues()(k);
  return roots;
}

mpq_class reconstruct_rational(double x, unsigned long max_den) {
  // continued-fraction expansion with a denominator cap
  if (!std::isfinite(x)) return 0;
  mpq_class target(x);
  target.canonicalize();
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpq_class rem = target;
  for (int it = 0; it < 64; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
    mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    mpq_class frac = rem - a;
    if (frac == 0) break;
    rem = mpq_class(1) / frac;
  }
  if (q1 == 0) return target;
  mpq_class r(p1, q1);
  r.canonicalize();
  return r;
}

ExactScalar horner(const std::vector<ExactScalar>& c, const ExactScalar& x) {
  ExactScalar acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// synthetic division by (x - r); remainder returned separately
std::pair<std::vector<ExactScalar>, ExactScalar> deflate(
    const std::vector<ExactScalar>& c, const ExactScalar& r) {
  std::vector<ExactScalar> q(c.size() - 1);
  ExactScalar acc(0);
  for (size_t k = c.size(); k-- > 1;) {
    acc = acc * r + c[k];
    q[k - 1] = acc;
  }
  ExactScalar rem = acc * r + c[0];
  return {q, rem};
}

}  // namespace

RootList<ExactScalar> find_field_roots(const std::vector<ExactScalar>& coeffs) {
  std::vector<ExactScalar> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  RootList<ExactScalar> out;
  if (c.size() <= 1) return out;
  int degree = int(c.size()) - 1;
  if (degree == 1) {
    ExactScalar r = -c[0] / c[1];
    if (!r.is_zero()) out.roots.emplace_back(r, 1);
    out.complete = true;
    return out;
  }
  std::vector<std::complex<double>> fc(c.size());
  for (size_t k = 0; k < c.size(); ++k) fc[k] = c[k].to_complex();
  auto numeric = companion_roots(fc);
  int accounted = 0;
  std::vector<ExactScalar> rem = c;
  for (const auto& z : numeric) {
    mpq_class re = reconstruct_rational(z.real(), 1000000000UL);
    mpq_class im = reconstruct_rational(z.imag(), 1000000000UL);
    ExactScalar cand(re, im);
    if (cand.is_zero()) continue;
    if (std::any_of(out.roots.begin(), out.roots.end(),
                    [&](const auto& p) { return p.first == cand; }))
      continue;
    if (!horner(c, cand).is_zero()) continue;
    int mult = 0;
    while (rem.size() > 1) {
      auto [q, r] = deflate(rem, cand);
      if (!r.is_zero()) break;
      rem = q;
      ++mult;
    }
    if (mult > 0) {
      out.roots.emplace_back(cand, mult);
      accounted += mult;
    }
  }
  // zero roots are intentionally not reported but count as accounted
  int zero_mult = 0;
  while (zero_mult < int(c.size()) && c[zero_mult].is_zero()) ++zero_mult;
  out.complete = (accounted + zero_mult == degree);
  return out;
}

RootList<std::complex<double>> find_field_roots(
    const std::vector<std::complex<double>>& coeffs) {
  std::vector<std::complex<double>> c = coeffs;
  double mx = 0;
  for (auto& z : c) mx = std::max(mx, std::abs(z));
  while (!c.empty() && std::abs(c.back()) < 1e-13 * mx) c.pop_back();
  RootList<std::complex<double>> out;
  if (c.size() <= 1) return out;
  auto roots = companion_roots(c);
  double scale = 0;
  for (auto& z : roots) scale = std::max(scale, std::abs(z));
  if (scale == 0) scale = 1;
  std::vector<bool> used(roots.size(), false);
  for (size_t a = 0; a < roots.size(); ++a) {
    if (used[a]) continue;
    if (std::abs(roots[a]) < 1e-10 * scale) { used[a] = true; continue; }
    std::complex<double> sum = roots[a];
    int mult = 1;
    used[a] = true;
    for (size_t b = a + 1; b < roots.size(); ++b) {
      if (used[b]) continue;
      if (std::abs(roots[b] - roots[a]) < 1e-6 * scale) {
        sum += roots[b];
        ++mult;
        used[b] = true;
      }
    }
    out.roots.emplace_back(sum / double(mult), mult);
  }
  return out;
}

RootList<RationalFunction> find_field_roots(const std::vector<RationalFunction>& coeffs) {
  std::vector<RationalFunction> c = coeffs;
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  RootList<RationalFunction> out;
  if (c.size() <= 1) return out;
  int degree = int(c.size()) - 1;
  if (degree == 1) {
    RationalFunction r = -c[0] / c[1];
    if (!r.is_zero()) out.roots.emplace_back(r, 1);
    return out;
  }
  bool constant = std::all_of(c.begin(), c.end(),
                              [](const RationalFunction& f) { return f.is_constant(); });
  if (constant) {
    std::vector<ExactScalar> sc(c.size());
    for (size_t k = 0; k < c.size(); ++k) sc[k] = c[k].constant_value();
    auto inner = find_field_roots(sc);
    for (const auto& [r, m] : inner.roots)
      out.roots.emplace_back(RationalFunction(c[0].vars(), r), m);
    out.complete = inner.complete;
    return out;
  }
  // Nonlinear slope equations over a rational-function field are routed to
  // the float flavor by the caller.
  out.complete = false;
  return out;
}

namespace {

// b == a * exp(2*pi*i*num/den)?
template <class F>
bool coeff_matches_rotation(const F& a, const F& b, int num, int den) {
  if constexpr (std::is_same_v<F, std::complex<double>>) {
    std::complex<double> rot = std::polar(1.0, 2.0 * M_PI * num / den);
    double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(b - a * rot) < 1e-8 * scale;
  } else {
    int r = ((num % den) + den) % den;
    if (field_ops<F>::is_zero(a) && field_ops<F>::is_zero(b)) return true;
    if (r == 0) return field_ops<F>::is_zero(a - b);
    if (2 * r == den) return field_ops<F>::is_zero(a + b);
    return false;
  }
}

template <class F>
bool branches_conjugate(const PuiseuxBranchT<F>& a, const PuiseuxBranchT<F>& b,
                        int conj_order) {
  if (conj_order <= 1) return false;
  for (int j = 1; j < conj_order; ++j) {
    bool ok = true;
    for (const Laurent<F>* pa : {&a.s_series, &a.t_series}) {
      const Laurent<F>& la = *pa;
      const Laurent<F>& lb = (pa == &a.s_series) ? b.s_series : b.t_series;
      int low = std::min(la.low(), lb.low());
      int hi = std::min(la.truncation_order(), lb.truncation_order());
      for (int k = low; k < hi && ok; ++k) {
        if (!coeff_matches_rotation(la.coeff(k), lb.coeff(k), j * k, conj_order))
          ok = false;
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

template <class F>
struct Expander {
  int order;
  bool complete = true;

  using Branch = PuiseuxBranchT<F>;

  // Float germs accumulate ~1e-16 debris at monomials whose coefficient is an
  // exact zero algebraically (e.g. the constant term after centering on a
  // char-poly root); drop them so vanishing tests see true zeros.  Exact
  // fields are untouched (coeff_mag is 0/1 there).
  static BiPoly<F> cleaned(BiPoly<F> g) {
    g = g.chopped(1e-12, [](const F& c) { return coeff_mag(c); });
    int w = g.min_s_exp();
    if (w > 0 && w != INT_MAX) g = g.shift_s(-w);
    return g;
  }

  // Solves g(x, y) = 0 for y(x) (valuation >= 1) when dg/dy(0,0) != 0.
  Laurent<F> newton_series(const BiPoly<F>& g) {
    const F& proto = g.proto();
    Laurent<F> x = Laurent<F>::monomial(field_ops<F>::one(proto), 1, order);
    Laurent<F> y = Laurent<F>::zero(proto, order);
    BiPoly<F> gt = g.partial_t();
    int iters = 2;
    for (int o = 1; o < order; o *= 2) ++iters;
    for (int it = 0; it < iters + 2; ++it) {
      Laurent<F> res = g.eval(x, y);
      if (res.is_zero_to_trunc()) break;
      y = (y - res / gt.eval(x, y)).truncated(order);
    }
    return y;
  }

  // All branches with val(y) >= 1 of g; the base coordinate is parametrized
  // as a pure monomial.  Used below the top-level orientation split.
  std::vector<Branch> expand_rec(BiPoly<F> g, int depth) {
    const F& proto = g.proto();
    std::vector<Branch> out;
    if (depth > 16) throw puiseux_error("branch expansion recursion too deep");
    if (g.is_zero()) throw puiseux_error("zero germ in branch recursion");
    // y == 0 component
    int b = g.min_t_exp();
    if (b > 0) {
      g = g.shift_t(-b);
      Branch zb(1, Laurent<F>::monomial(field_ops<F>::one(proto), 1, order),
                Laurent<F>::zero(proto, order));
      for (int k = 0; k < b; ++k) out.push_back(zb);
    }
    if (g.dist_degree() == 0) return out;  // no further branches through 0
    if (g.min_s_exp() > 0)
      throw puiseux_error("germ contains the coordinate axis {s=0}");
    // smooth shortcut
    {
      auto it = g.terms().find({0, 1});
      if (it != g.terms().end() && g.dist_degree() == 1) {
        out.emplace_back(1, Laurent<F>::monomial(field_ops<F>::one(proto), 1, order),
                         newton_series(g));
        return out;
      }
    }
    auto edge_branches = expand_edges(g, depth, /*min_slope_num=*/0,
                                      /*min_slope_den=*/1, /*strict=*/true);
    out.insert(out.end(), edge_branches.begin(), edge_branches.end());
    return out;
  }

  // Expands branches for Newton-polygon edges with slope filter
  // (slope > min_num/min_den, or >= when strict is false).
  std::vector<Branch> expand_edges(const BiPoly<F>& g, int depth, int min_slope_num,
                                   int min_slope_den, bool strict) {
    const F& proto = g.proto();
    std::vector<Branch> out;
    // support: for each t-exponent j, minimal s-exponent i
    std::map<int, int> min_i;
    for (const auto& [k, c] : g.terms()) {
      auto it = min_i.find(k.second);
      if (it == min_i.end() || k.first < it->second) min_i[k.second] = k.first;
    }
    std::vector<std::pair<int, int>> pts(min_i.begin(), min_i.end());  // (j, i)
    // lower convex hull over increasing j
    std::vector<std::pair<int, int>> hull;
    for (const auto& p : pts) {
      while (hull.size() >= 2) {
        auto& a = hull[hull.size() - 2];
        auto& b = hull[hull.size() - 1];
        // cross product of (b-a) x (p-a) in (j, i)
        long cross = long(b.first - a.first) * (p.second - a.second) -
                     long(b.second - a.second) * (p.first - a.first);
        if (cross <= 0) hull.pop_back();
        else break;
      }
      hull.push_back(p);
    }
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
      auto [j1, i1] = hull[e];
      auto [j2, i2] = hull[e + 1];
      if (i2 >= i1) continue;  // non-negative slope: not a branch toward t->0
      int dj = j2 - j1, di = i1 - i2;  // slope = di/dj > 0
      // slope filter
      long lhs = long(di) * min_slope_den, rhs = long(min_slope_num) * dj;
      if (strict ? (lhs <= rhs) : (lhs < rhs)) continue;
      int gg = std::gcd(di, dj);
      int p = di / gg, q = dj / gg;
      // slope equation along the edge
      std::vector<F> char_poly(size_t(dj / q) + 1, field_ops<F>::zero(proto));
      for (const auto& [k, c] : g.terms()) {
        if (k.second < j1 || k.second > j2) continue;
        // on the edge: (k.second - j1) * di == (i1 - k.first) * dj
        if (long(k.second - j1) * di != long(i1 - k.first) * dj) continue;
        if ((k.second - j1) % q != 0) continue;
        char_poly[size_t((k.second - j1) / q)] = char_poly[size_t((k.second - j1) / q)] + c;
      }
      auto roots = find_field_roots(char_poly);
      if (!roots.complete) complete = false;
      for (const auto& [c_root, mult] : roots.roots) {
        BiPoly<F> gh = cleaned(g.ramified_transform(q, p, c_root));
        auto subs = expand_rec(gh, depth + 1);
        for (const auto& sb : subs) {
          // sub-branch: x = tau^mp (pure monomial), y = sb.t_series
          int mp = sb.s_series.valuation();
          Laurent<F> shifted_c = Laurent<F>::constant(c_root, order);
          Laurent<F> t_ser =
              ((shifted_c + sb.t_series) *
               Laurent<F>::monomial(field_ops<F>::one(proto), p * mp, order))
                  .truncated(order);
          out.emplace_back(q * mp,
                           Laurent<F>::monomial(field_ops<F>::one(proto), q * mp, order),
                           std::move(t_ser));
        }
      }
    }
    if (depth == 0) dedup_conjugates(out);
    return out;
  }

  void dedup_conjugates(std::vector<Branch>& v) {
    for (size_t a = 0; a < v.size(); ++a) {
      for (size_t b = a + 1; b < v.size();) {
        if (v[a].ram == v[b].ram && v[a].ram > 1 &&
            branches_conjugate(v[a], v[b], v[a].ram)) {
          v.erase(v.begin() + long(b));
        } else {
          ++b;
        }
      }
    }
  }
};

}  // namespace

template <class F>
PuiseuxOutcome<F> newton_puiseux(const BiPoly<F>& germ, int order) {
  if (order < 2) throw puiseux_error("expansion order must be at least 2");
  if (germ.is_zero()) throw puiseux_error("zero germ");
  const F& proto = germ.proto();
  if (germ.terms().count({0, 0}))
    throw puiseux_error("germ does not vanish at the center");
  if (germ.min_s_exp() > 0)
    throw puiseux_error("germ vanishes identically on {s=0}: divide out the component first");

  PuiseuxOutcome<F> out;
  BiPoly<F> g = germ;
  int tb = g.min_t_exp();
  if (tb > 0) {
    g = g.shift_t(-tb);
    PuiseuxBranchT<F> zb(1, Laurent<F>::monomial(field_ops<F>::one(proto), 1, order),
                         Laurent<F>::zero(proto, order));
    for (int k = 0; k < tb; ++k) out.branches.push_back(zb);
  }
  out.expected_sheets = tb + (g.dist_degree() == INT_MAX ? 0 : g.dist_degree());

  Expander<F> ex{order};
  if (g.dist_degree() > 0 && g.dist_degree() != INT_MAX) {
    // orientation A: t as a series in s, slopes >= 1
    auto A = ex.expand_edges(g, 0, 1, 1, /*strict=*/false);
    out.branches.insert(out.branches.end(), A.begin(), A.end());
    // orientation B: s as a series in t, original slopes < 1
    auto B = ex.expand_edges(g.swapped(), 0, 1, 1, /*strict=*/true);
    for (auto& br : B) {
      std::swap(br.s_series, br.t_series);
      br.ram = br.s_series.valuation();
      out.branches.push_back(br);
    }
  }
  out.complete = ex.complete;
  if (out.complete) {
    int total = 0;
    for (const auto& b : out.branches) total += b.ram;
    if (total != out.expected_sheets)
      throw puiseux_error("branch multiplicity accounting mismatch: got " +
                          std::to_string(total) + ", expected " +
                          std::to_string(out.expected_sheets));
  }
  return out;
}

template PuiseuxOutcome<ExactScalar> newton_puiseux(const BiPoly<ExactScalar>&, int);
template PuiseuxOutcome<std::complex<double>> newton_puiseux(const BiPoly<std::complex<double>>&, int);
template PuiseuxOutcome<RationalFunction> newton_puiseux(const BiPoly<RationalFunction>&, int);

}  // namespace parshin
