#include "parshin/torus.hpp"

#include <cmath>

namespace parshin {
namespace {

const double kSeparationFloor = 1e3 * kCollisionTol;
const double kCondLimit = 1e8;
const int kGridCap = 1024;

int round_up_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

std::vector<std::complex<double>> fixed_targets(const FlagProblem& p, double d1,
                                                double d2) {
  if (p.n == 1) return {d1};
  return {d1, d2};
}

// Probe predicate for choose_radii: start points exist, are separated, the
// monodromy loop closes, and tangent systems are well-conditioned.
bool radii_admissible(const FlagProblem& p, double d1, double d2,
                      std::string* why) {
  try {
    StartPoints sp = start_points(p, d1, d2);
    for (size_t a = 0; a < sp.points.size(); ++a)
      for (size_t b = a + 1; b < sp.points.size(); ++b)
        if ((sp.points[a] - sp.points[b]).norm() < kSeparationFloor) {
          if (why) *why = "start points closer than the separation floor";
          return false;
        }
    AmbientSystem sys(p);
    for (const auto& x : sp.points) {
      tangent_solve(sys, x, 0);
      if (p.n == 2) tangent_solve(sys, x, 1);
    }
    if (p.n == 2) {
      // a coarse full-torus track exercises both loop closures, which catches
      // radii that place a torus circle on a fold of the u_2 covering
      for (const auto& pt : enumerate_parshin_points(p, d1, d2))
        track_torus(p, pt, d1, d2, 8);
    } else {
      AmbientSystem s1(p);
      auto x = track_circle(s1, sp.points[0], fixed_targets(p, d1, d2), 0, d1, 0.0,
                            2.0 * M_PI, 32);
      (void)x;
    }
    return true;
  } catch (const std::exception& e) {
    if (why) *why = e.what();
    return false;
  }
}

}  // namespace

Eigen::VectorXcd tangent_solve(const AmbientSystem& sys, const Eigen::VectorXcd& P,
                               int direction) {
  Eigen::MatrixXcd J = sys.jacobian(P);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  auto sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0 || sv(0) / sv(sv.size() - 1) > kCondLimit)
    throw torus_error("tangent system condition number exceeds the limit");
  // current u values from the residual at zero targets
  std::vector<std::complex<double>> zeros(size_t(sys.n_params()), 0.0);
  Eigen::VectorXcd r = sys.residual(P, zeros);
  int first_param_row = sys.dim() - sys.n_params();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(sys.dim());
  rhs(first_param_row + direction) =
      std::complex<double>(0, 1) * r(first_param_row + direction);
  return svd.solve(rhs);
}

RadiiChoice choose_radii(const FlagProblem& p) {
  RadiiChoice rc;
  std::string why = "no admissible radii";
  int shrinks = 0;
  double d1 = 0.5;
  while (shrinks <= 40) {
    if (p.n == 1) {
      if (radii_admissible(p, d1, 0.0, &why)) {
        rc.delta1 = d1;
        rc.shrinks = shrinks;
        return rc;
      }
      d1 /= 2;
      ++shrinks;
      continue;
    }
    double d2 = d1 / 4;
    for (int inner = 0; inner < 12 && shrinks <= 40; ++inner, ++shrinks) {
      if (radii_admissible(p, d1, d2, &why)) {
        rc.delta1 = d1;
        rc.delta2 = d2;
        rc.shrinks = shrinks;
        return rc;
      }
      d2 /= 2;
    }
    d1 /= 2;
    ++shrinks;
  }
  throw torus_error("no admissible radii within 40 shrinks (last failure: " + why + ")");
}

TorusCycle track_torus(const FlagProblem& p, const ParshinPoint& a, double delta1,
                       double delta2, int N) {
  if (N < 8) throw torus_error("grid too coarse");
  N = round_up_pow2(N);
  AmbientSystem sys(p);
  StartPoints sp = start_points(p, delta1, delta2);
  int rep = a.members.at(0);
  if (rep < 0 || rep >= int(sp.points.size()))
    throw torus_error("stale Parshin point: branch index out of range");
  Eigen::VectorXcd x0 = sp.points[size_t(rep)];

  TorusCycle cyc;
  cyc.n = p.n;
  cyc.delta1 = delta1;
  cyc.delta2 = delta2;
  cyc.covering = a.covering;
  cyc.grid.assign(size_t(p.n), N);
  auto fixed = fixed_targets(p, delta1, delta2);
  double close_tol = kMatchingRelTol * std::max(1.0, x0.norm());

  int R = cyc.rows();
  double h1 = 2.0 * M_PI / N;
  std::vector<Eigen::VectorXcd> backbone;
  backbone.assign(size_t(R), Eigen::VectorXcd());
  backbone[0] = x0;
  for (int i1 = 1; i1 < R; ++i1)
    backbone[size_t(i1)] = track_circle(sys, backbone[size_t(i1 - 1)], fixed, 0,
                                        delta1, (i1 - 1) * h1, i1 * h1, 1);
  {
    Eigen::VectorXcd wrap = track_circle(sys, backbone[size_t(R - 1)], fixed, 0,
                                         delta1, (R - 1) * h1, R * h1, 1);
    if ((wrap - x0).norm() > close_tol)
      throw torus_error("theta_1 loop failed to close on the torus grid");
  }

  if (p.n == 1) {
    cyc.samples = std::move(backbone);
    cyc.tangents1.reserve(cyc.samples.size());
    for (const auto& P : cyc.samples) cyc.tangents1.push_back(tangent_solve(sys, P, 0));
    return cyc;
  }

  int C = cyc.cols();
  double h2 = 2.0 * M_PI / N;
  cyc.samples.assign(size_t(R) * size_t(C), Eigen::VectorXcd());
  for (int i1 = 0; i1 < R; ++i1) {
    // each theta_2 row keeps theta_1 fixed; u_1 target is the row's value
    auto row_fixed = fixed;
    row_fixed[0] = std::polar(delta1, i1 * h1);
    cyc.samples[size_t(i1) * size_t(C)] = backbone[size_t(i1)];
    for (int i2 = 1; i2 < C; ++i2)
      cyc.samples[size_t(i1) * size_t(C) + size_t(i2)] =
          track_circle(sys, cyc.samples[size_t(i1) * size_t(C) + size_t(i2 - 1)],
                       row_fixed, 1, delta2, (i2 - 1) * h2, i2 * h2, 1);
    Eigen::VectorXcd wrap =
        track_circle(sys, cyc.samples[size_t(i1) * size_t(C) + size_t(C - 1)],
                     row_fixed, 1, delta2, (C - 1) * h2, C * h2, 1);
    if ((wrap - backbone[size_t(i1)]).norm() > close_tol)
      throw torus_error("theta_2 loop failed to close on the torus grid");
  }
  cyc.tangents1.reserve(cyc.samples.size());
  cyc.tangents2.reserve(cyc.samples.size());
  for (const auto& P : cyc.samples) {
    cyc.tangents1.push_back(tangent_solve(sys, P, 0));
    cyc.tangents2.push_back(tangent_solve(sys, P, 1));
  }
  return cyc;
}

QuadratureResult integrate_torus(const DifferentialForm& form, const TorusCycle& cycle,
                                 const FlagProblem& p) {
  QuadratureResult qr;
  qr.min_denominator = 1e300;
  int R = cycle.rows();
  int C = cycle.cols();
  // integrand values on the full grid
  std::vector<std::complex<double>> w(size_t(R) * size_t(C), 0.0);
  for (int i1 = 0; i1 < R; ++i1) {
    for (int i2 = 0; i2 < C; ++i2) {
      size_t idx = size_t(i1) * size_t(C) + size_t(i2);
      const Eigen::VectorXcd& P = cycle.samples[idx];
      std::vector<std::complex<double>> pt(P.data(), P.data() + P.size());
      std::complex<double> acc = 0;
      for (const auto& term : form.terms) {
        std::complex<double> den =
            term.coeff.den().eval(std::span<const std::complex<double>>(pt));
        qr.min_denominator = std::min(qr.min_denominator, std::abs(den));
        std::complex<double> c =
            term.coeff.num().eval(std::span<const std::complex<double>>(pt)) / den;
        if (p.n == 1) {
          acc += c * cycle.tangents1[idx](term.diffs[0]);
        } else {
          const Eigen::VectorXcd& v1 = cycle.tangents1[idx];
          const Eigen::VectorXcd& v2 = cycle.tangents2[idx];
          int a = term.diffs[0], b = term.diffs[1];
          acc += c * (v1(a) * v2(b) - v1(b) * v2(a));
        }
      }
      w[idx] = acc;
    }
  }
  // refinement history on aligned subgrids (stride powers of two)
  int N = cycle.grid[0];
  std::vector<int> strides;
  for (int s = N / 8; s >= 1; s /= 2)
    if (s >= 1 && N % s == 0) strides.push_back(s);
  if (strides.empty()) strides.push_back(1);
  for (int s : strides) {
    int Ns = N / s;
    std::complex<double> sum = 0;
    for (int i1 = 0; i1 < R; i1 += s)
      for (int i2 = 0; i2 < C; i2 += s)
        sum += w[size_t(i1) * size_t(C) + size_t(i2)];
    std::complex<double> val;
    if (p.n == 1)
      val = sum / (std::complex<double>(0, 1) * double(Ns));
    else
      val = -sum / double(Ns) / double(Ns);
    qr.grids.push_back(Ns);
    qr.history.push_back(val);
  }
  qr.value = qr.history.back();
  qr.est_error = qr.history.size() >= 2
                     ? std::abs(qr.history.back() - qr.history[qr.history.size() - 2])
                     : 0.0;
  return qr;
}

NumericFlagResidue residue_numeric_at_flag(const FlagProblem& p, double delta1,
                                           double delta2, int grid, double tol) {
  NumericFlagResidue out;
  if (delta1 <= 0 || (p.n == 2 && delta2 <= 0)) {
    RadiiChoice rc = choose_radii(p);
    if (delta1 <= 0) delta1 = rc.delta1;
    if (p.n == 2 && delta2 <= 0) delta2 = rc.delta2;
  }
  out.delta1 = delta1;
  out.delta2 = delta2;
  out.points = enumerate_parshin_points(p, delta1, delta2);
  for (const auto& pt : out.points) {
    int N = std::max(32, round_up_pow2(grid));
    QuadratureResult qr;
    for (;;) {
      TorusCycle cyc = track_torus(p, pt, delta1, delta2, N);
      qr = integrate_torus(p.form, cyc, p);
      if (qr.min_denominator < 1e-8)
        throw torus_error("form pole too close to the torus samples");
      if (qr.est_error < tol || N >= kGridCap) break;
      N *= 2;
    }
    out.total += qr.value;
    out.components.push_back(std::move(qr));
  }
  return out;
}

}  // namespace parshin
