// Monodromy of transverse branch points along the u1 loop, and the
// enumeration of Parshin points as monodromy orbits.
#pragma once

#include "parshin/continuation.hpp"

namespace parshin {

struct MonodromyPermutation {
  std::vector<int> map;                 // image index per branch index
  std::vector<std::vector<int>> orbits; // partition of the index set
};

struct StartPoints {
  std::complex<double> t_base = 0;      // curve parameter with u1 = delta1 (n = 2)
  std::vector<Eigen::VectorXcd> points; // torus start points at theta = 0
};

inline constexpr double kCollisionTol = 1e-9;
inline constexpr double kMatchingRelTol = 1e-6;

// Local solutions of { surface = 0, u_i = delta_i } near V0, one per local
// branch sheet, deterministically ordered.
StartPoints start_points(const FlagProblem& p, double delta1, double delta2);

// Permutation of the start points after continuing u1 around its circle once.
MonodromyPermutation monodromy_along_loop(const FlagProblem& p, double delta1,
                                          double delta2, int samples = 64);
// Same, but from precomputed start points (shared with enumeration).
MonodromyPermutation monodromy_from_points(const FlagProblem& p,
                                           const StartPoints& sp, double delta1,
                                           double delta2, int samples = 64);

// First-return covering degree of the theta_2 circle through x0 (cap 8).
int covering_theta2(const FlagProblem& p, const Eigen::VectorXcd& x0,
                    double delta1, double delta2, int samples = 64);

}  // namespace parshin
