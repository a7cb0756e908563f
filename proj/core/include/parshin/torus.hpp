// Torus cycles: radius selection, grid tracking with tangent data, and
// periodic trapezoid quadrature with refinement history.
#pragma once

#include "parshin/monodromy.hpp"

namespace parshin {

struct torus_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One connected torus component (a circle for n = 1).  Samples are stored
// row-major: index i1 * cols + i2 with theta_1 = i1 * 2*pi/N1 covering
// [0, 2*pi*m1) and theta_2 = i2 * 2*pi/N2 covering [0, 2*pi*m2).
struct TorusCycle {
  int n = 2;
  double delta1 = 0, delta2 = 0;
  std::vector<int> covering;  // (m_1[, m_2])
  std::vector<int> grid;      // (N_1[, N_2]) samples per 2*pi
  std::vector<Eigen::VectorXcd> samples;
  std::vector<Eigen::VectorXcd> tangents1;
  std::vector<Eigen::VectorXcd> tangents2;  // empty for n = 1

  int rows() const { return covering[0] * grid[0]; }
  int cols() const { return n == 2 ? covering[1] * grid[1] : 1; }
  const Eigen::VectorXcd& at(int i1, int i2) const {
    return samples[size_t(i1) * size_t(cols()) + size_t(i2)];
  }
};

struct QuadratureResult {
  std::complex<double> value{0, 0};
  std::vector<int> grids;                     // refinement N per entry
  std::vector<std::complex<double>> history;  // value per refinement
  double est_error = 0;                       // |last - previous|
  double min_denominator = 0;                 // pole-proximity diagnostic
};

struct RadiiChoice {
  double delta1 = 0, delta2 = 0;
  int shrinks = 0;
};

// Geometric shrinking from 1/2 until the torus is trackable: constant root
// count along the loop, pairwise separation > 1e3 * collision tolerance, and
// well-conditioned tangent systems on a probe grid.
RadiiChoice choose_radii(const FlagProblem& p);

// The ambient tangent vector v at P with <grad surface, v> = 0 and
// <grad u_j, v> = i * u_j(P) * [j == direction].
Eigen::VectorXcd tangent_solve(const AmbientSystem& sys, const Eigen::VectorXcd& P,
                               int direction);

// Tracks the full sample grid of the torus component through `a`.
TorusCycle track_torus(const FlagProblem& p, const ParshinPoint& a, double delta1,
                       double delta2, int N);

// Periodic trapezoid quadrature of `form` over the cycle, normalized by
// (2*pi*i)^{-n}; the refinement history is computed on aligned subgrids.
QuadratureResult integrate_torus(const DifferentialForm& form, const TorusCycle& cycle,
                                 const FlagProblem& p);

struct NumericFlagResidue {
  std::vector<ParshinPoint> points;
  std::vector<QuadratureResult> components;
  std::complex<double> total{0, 0};
  double delta1 = 0, delta2 = 0;
};

// End-to-end numeric residue: radii (unless overridden > 0), enumeration,
// tracking, quadrature with grid doubling until |change| < tol or N = 1024.
NumericFlagResidue residue_numeric_at_flag(const FlagProblem& p, double delta1 = 0,
                                           double delta2 = 0, int grid = 64,
                                           double tol = 1e-10);

}  // namespace parshin
