#include "parshin/monodromy.hpp"

#include <algorithm>
#include <cmath>

namespace parshin {
namespace {

const int kExpandOrder = 12;
const int kCoveringCap = 8;

std::complex<double> eval_1var(const RationalFunction& f, std::complex<double> t) {
  std::vector<std::complex<double>> pt{t};
  return f.eval(std::span<const std::complex<double>>(pt));
}

// Solve u1(curve(t)) = delta1 for t near 0 (valuation-1 zero).
std::complex<double> solve_curve_parameter(const FlagProblem& p, double delta1) {
  RationalFunction u1c = compose_on_curve(p.params[0], p);
  RationalFunction du = u1c.partial(p.curve_param);
  std::complex<double> c = eval_1var(du, 0.0);
  if (std::abs(c) < 1e-300)
    throw continuation_error("u_1 has higher-order zero along the curve");
  std::complex<double> t = delta1 / c;
  for (int it = 0; it < 60; ++it) {
    std::complex<double> r = eval_1var(u1c, t) - delta1;
    if (std::abs(r) < 1e-14 * std::max(1.0, delta1)) break;
    std::complex<double> d = eval_1var(du, t);
    if (std::abs(d) < 1e-300) throw continuation_error("degenerate Newton step for t_base");
    t -= r / d;
  }
  return t;
}

std::vector<std::complex<double>> curve_point(const FlagProblem& p,
                                              std::complex<double> tb) {
  std::vector<std::complex<double>> tv{tb};
  std::vector<std::complex<double>> out(p.curve.size());
  for (size_t v = 0; v < p.curve.size(); ++v)
    out[v] = p.curve[v].eval(std::span<const std::complex<double>>(tv));
  return out;
}

std::complex<double> eval_series_at(const Laurent<std::complex<double>>& s,
                                    std::complex<double> tau) {
  std::complex<double> acc = 0;
  for (int k = s.low(); k < s.truncation_order(); ++k)
    acc += s.coeff(k) * std::pow(tau, k);
  return acc;
}

int float_val(const Laurent<std::complex<double>>& s) {
  double mx = 0;
  for (int k = s.low(); k < s.truncation_order(); ++k)
    mx = std::max(mx, std::abs(s.coeff(k)));
  if (mx == 0) return INT_MAX;
  for (int k = s.low(); k < s.truncation_order(); ++k)
    if (std::abs(s.coeff(k)) > 1e-8 * mx) return k;
  return INT_MAX;
}

// Newton at the nearby targets (where the series seed is sharp), then track
// the targets linearly out to their final values.
Eigen::VectorXcd refine_and_lift(const AmbientSystem& sys, Eigen::VectorXcd x,
                                 std::vector<std::complex<double>> near,
                                 std::vector<std::complex<double>> final_t) {
  if (!sys.newton(x, near))
    throw continuation_error("Newton failed to refine a start point seed");
  auto path = [near, final_t](double s) {
    std::vector<std::complex<double>> t(near.size());
    for (size_t i = 0; i < near.size(); ++i) t[i] = near[i] + s * (final_t[i] - near[i]);
    return t;
  };
  auto dpath = [near, final_t](double) {
    std::vector<std::complex<double>> t(near.size());
    for (size_t i = 0; i < near.size(); ++i) t[i] = final_t[i] - near[i];
    return t;
  };
  return track_path(sys, std::move(x), path, dpath, 0.0, 1.0, 64);
}

void sort_points(std::vector<Eigen::VectorXcd>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (int v = 0; v < a.size(); ++v) {
      if (std::abs(a(v).real() - b(v).real()) > 1e-10) return a(v).real() < b(v).real();
      if (std::abs(a(v).imag() - b(v).imag()) > 1e-10) return a(v).imag() < b(v).imag();
    }
    return false;
  });
}

}  // namespace

StartPoints start_points(const FlagProblem& p, double delta1, double delta2) {
  StartPoints sp;
  AmbientSystem sys(p);
  if (p.n == 2 && !p.full_ambient()) {
    sp.t_base = solve_curve_parameter(p, delta1);
    auto dirs = transverse_dirs(p);
    auto germ = slice_germ_at(p, sp.t_base)
                    .chopped(1e-13, [](const std::complex<double>& c) { return std::abs(c); });
    auto out = newton_puiseux(germ, kExpandOrder);
    auto base = curve_point(p, sp.t_base);
    std::vector<std::complex<double>> targets{delta1, delta2};
    for (const auto& b : out.branches) {
      auto coords = branch_coordinates(base, b, dirs);
      auto u2 = expand_along(p.params[1], coords, std::complex<double>(0));
      int v = float_val(u2);
      if (v == INT_MAX || v <= 0)
        throw continuation_error("u_2 does not vanish transversally on a branch");
      std::complex<double> cv = u2.coeff(v);
      double d_small = delta2 / 64.0;
      std::complex<double> tau0 = std::pow(d_small / cv, 1.0 / v);
      for (int r = 0; r < v; ++r) {
        std::complex<double> tau = tau0 * std::polar(1.0, 2.0 * M_PI * r / v);
        Eigen::VectorXcd x(3);
        for (int c = 0; c < 3; ++c) x(c) = eval_series_at(coords[size_t(c)], tau);
        x = refine_and_lift(sys, std::move(x), {delta1, d_small}, targets);
        // drop duplicates (conjugate parametrizations of the same sheet)
        bool dup = false;
        for (const auto& q : sp.points)
          if ((q - x).norm() < 10 * kCollisionTol) dup = true;
        if (!dup) sp.points.push_back(std::move(x));
      }
    }
  } else if (p.n == 2 && p.full_ambient()) {
    sp.t_base = solve_curve_parameter(p, delta1);
    auto base = curve_point(p, sp.t_base);
    Eigen::VectorXcd x(2);
    x << base[0], base[1];
    Eigen::MatrixXcd J = sys.jacobian(x);
    Eigen::VectorXcd rhs(2);
    rhs << 0.0, 1.0;
    Eigen::VectorXcd v = J.partialPivLu().solve(rhs);
    double d_small = delta2 / 64.0;
    x += d_small * v;
    x = refine_and_lift(sys, std::move(x), {delta1, d_small}, {delta1, delta2});
    sp.points.push_back(std::move(x));
  } else if (p.n == 1 && !p.full_ambient()) {
    auto out = curve_branches(p, kExpandOrder);
    std::vector<std::complex<double>> targets{delta1};
    for (const auto& b : out.branches) {
      int trunc = b.s_series.truncation_order();
      std::vector<Laurent<std::complex<double>>> coords;
      for (int c = 0; c < 2; ++c) {
        const auto& ser = (c == 0) ? b.s_series : b.t_series;
        auto fl = Laurent<std::complex<double>>::zero(0.0, trunc);
        for (int k = ser.low(); k < ser.truncation_order(); ++k)
          fl = fl + Laurent<std::complex<double>>::monomial(ser.coeff(k).to_complex(), k, trunc);
        coords.push_back(Laurent<std::complex<double>>::constant(
                             p.point[size_t(c)].to_complex(), trunc) +
                         fl);
      }
      auto u1 = expand_along(p.params[0], coords, std::complex<double>(0));
      int v = float_val(u1);
      if (v == INT_MAX || v <= 0)
        throw continuation_error("u_1 does not vanish on a curve branch");
      std::complex<double> cv = u1.coeff(v);
      double d_small = delta1 / 64.0;
      std::complex<double> tau = std::pow(d_small / cv, 1.0 / v);
      Eigen::VectorXcd x(2);
      for (int c = 0; c < 2; ++c) x(c) = eval_series_at(coords[size_t(c)], tau);
      x = refine_and_lift(sys, std::move(x), {d_small}, targets);
      sp.points.push_back(std::move(x));
    }
  } else {  // n = 1 on the line
    RationalFunction u1 = p.params[0];
    RationalFunction du = u1.partial(p.vars[0]);
    std::vector<std::complex<double>> pt{p.point[0].to_complex()};
    std::complex<double> c = du.eval(std::span<const std::complex<double>>(pt));
    Eigen::VectorXcd x(1);
    x(0) = pt[0] + delta1 / c;
    std::vector<std::complex<double>> targets{delta1};
    if (!sys.newton(x, targets))
      throw continuation_error("Newton failed on the line chart");
    sp.points.push_back(std::move(x));
  }
  if (p.n == 2 && !p.full_ambient()) sort_points(sp.points);
  return sp;
}

MonodromyPermutation monodromy_from_points(const FlagProblem& p,
                                           const StartPoints& sp, double delta1,
                                           double delta2, int samples) {
  AmbientSystem sys(p);
  size_t m = sp.points.size();
  double d_min = 1e300;
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      d_min = std::min(d_min, (sp.points[a] - sp.points[b]).norm());
  if (m >= 2 && d_min < kCollisionTol)
    throw continuation_error("branch collision at the loop base point");
  double match_tol = (m >= 2) ? kMatchingRelTol * d_min
                              : kMatchingRelTol * std::max(1.0, sp.points[0].norm());

  std::vector<std::complex<double>> fixed{delta1, delta2};
  if (p.n == 1) fixed = {delta1};
  MonodromyPermutation perm;
  perm.map.assign(m, -1);
  for (size_t i = 0; i < m; ++i) {
    Eigen::VectorXcd end = track_circle(sys, sp.points[i], fixed, 0, delta1, 0.0,
                                        2.0 * M_PI, std::max(samples, 16));
    int best = -1;
    double bd = 1e300;
    for (size_t j = 0; j < m; ++j) {
      double d = (end - sp.points[j]).norm();
      if (d < bd) {
        bd = d;
        best = int(j);
      }
    }
    if (best < 0 || bd > match_tol)
      throw continuation_error("loop endpoint failed to match a start point");
    perm.map[i] = best;
  }
  std::vector<char> seen(m, 0);
  for (size_t i = 0; i < m; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    int j = int(i);
    while (!seen[size_t(j)]) {
      seen[size_t(j)] = 1;
      orbit.push_back(j);
      j = perm.map[size_t(j)];
    }
    perm.orbits.push_back(std::move(orbit));
  }
  // bijectivity
  std::vector<char> hit(m, 0);
  for (int v : perm.map) {
    if (v < 0 || hit[size_t(v)])
      throw continuation_error("monodromy map is not a permutation");
    hit[size_t(v)] = 1;
  }
  return perm;
}

MonodromyPermutation monodromy_along_loop(const FlagProblem& p, double delta1,
                                          double delta2, int samples) {
  return monodromy_from_points(p, start_points(p, delta1, delta2), delta1, delta2,
                               samples);
}

int covering_theta2(const FlagProblem& p, const Eigen::VectorXcd& x0,
                    double delta1, double delta2, int samples) {
  AmbientSystem sys(p);
  std::vector<std::complex<double>> fixed{delta1, delta2};
  Eigen::VectorXcd x = x0;
  double tol = kMatchingRelTol * std::max(1.0, x0.norm());
  for (int m = 1; m <= kCoveringCap; ++m) {
    x = track_circle(sys, x, fixed, 1, delta2, 0.0, 2.0 * M_PI,
                     std::max(samples, 16));
    if ((x - x0).norm() < tol) return m;
  }
  throw continuation_error("theta_2 covering degree exceeds the cap");
}

std::vector<ParshinPoint> enumerate_parshin_points(const FlagProblem& p,
                                                   double delta1, double delta2) {
  std::vector<ParshinPoint> out;
  if (p.n == 1) {
    if (p.full_ambient()) {
      ParshinPoint pt;
      pt.orbit_id = 0;
      pt.members = {0};
      pt.covering = {1};
      out.push_back(std::move(pt));
      return out;
    }
    auto branches = curve_branches(p, kExpandOrder);
    for (size_t i = 0; i < branches.branches.size(); ++i) {
      ParshinPoint pt;
      pt.orbit_id = int(i);
      pt.members = {int(i)};
      pt.covering = {branches.branches[i].ram};
      out.push_back(std::move(pt));
    }
    return out;
  }
  StartPoints sp = start_points(p, delta1, delta2);
  MonodromyPermutation perm = monodromy_from_points(p, sp, delta1, delta2);
  for (size_t o = 0; o < perm.orbits.size(); ++o) {
    ParshinPoint pt;
    pt.orbit_id = int(o);
    pt.members = perm.orbits[o];
    std::sort(pt.members.begin(), pt.members.end());
    int rep = pt.members[0];
    // first return of the representative under the theta_1 loop
    int m1 = 1;
    for (int j = perm.map[size_t(rep)]; j != rep; j = perm.map[size_t(j)]) ++m1;
    int m2 = covering_theta2(p, sp.points[size_t(rep)], delta1, delta2);
    pt.covering = {m1, m2};
    const auto& x = sp.points[size_t(rep)];
    pt.base_point.assign(x.data(), x.data() + x.size());
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const ParshinPoint& a, const ParshinPoint& b) {
    return a.members[0] < b.members[0];
  });
  for (size_t o = 0; o < out.size(); ++o) out[o].orbit_id = int(o);
  return out;
}

}  // namespace parshin
