// Square polynomial/rational systems cutting out torus points, Newton
// correction, and predictor-corrector path tracking.
#pragma once

#include <Eigen/Dense>
#include <functional>

#include "parshin/flag_problem.hpp"

namespace parshin {

struct continuation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The square system { surface = 0 (when present), u_i = target_i } in the
// ambient coordinates.  Targets are supplied per call so the same system can
// be shared across concurrent tracks.
class AmbientSystem {
 public:
  explicit AmbientSystem(const FlagProblem& p);

  int dim() const { return dim_; }
  int n_params() const { return int(p_->params.size()); }

  Eigen::VectorXcd residual(const Eigen::VectorXcd& x,
                            std::span<const std::complex<double>> targets) const;
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const;

  // Newton iteration toward residual = 0; returns false on stagnation or an
  // ill-conditioned Jacobian.  On success the relative residual is < tol.
  bool newton(Eigen::VectorXcd& x, std::span<const std::complex<double>> targets,
              double tol = 1e-12, int iters = 30) const;

 private:
  const FlagProblem* p_;
  int dim_;
  bool has_surface_;
  std::vector<Polynomial> surface_grad_;
  std::vector<std::vector<RationalFunction>> param_grad_;
};

// Target path: s -> (target_1(s), ..., target_n(s)) and its derivative.
using TargetPath = std::function<std::vector<std::complex<double>>(double)>;

// Tracks a solution while the targets move along `path` from s0 to s1.
// Tangent predictor + Newton corrector, step halving on corrector failure
// down to |s1 - s0| / 4096.  Throws continuation_error on step exhaustion.
Eigen::VectorXcd track_path(const AmbientSystem& sys, Eigen::VectorXcd x,
                            const TargetPath& path, const TargetPath& dpath,
                            double s0, double s1, int min_steps = 64);

// Convenience: circular path for parameter `pi` (target = delta * e^{i s});
// the other parameters stay at the fixed targets.
Eigen::VectorXcd track_circle(const AmbientSystem& sys, Eigen::VectorXcd x,
                              std::vector<std::complex<double>> fixed_targets,
                              int pi, double delta, double theta0, double theta1,
                              int min_steps = 64);

}  // namespace parshin
