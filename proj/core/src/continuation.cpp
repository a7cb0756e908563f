#include "parshin/continuation.hpp"

namespace parshin {

AmbientSystem::AmbientSystem(const FlagProblem& p)
    : p_(&p), dim_(p.ambient_dim()), has_surface_(!p.full_ambient()) {
  if (has_surface_) {
    for (int v = 0; v < dim_; ++v)
      surface_grad_.push_back(p.surface.partial(p.vars[size_t(v)]));
  }
  for (const auto& u : p.params) {
    std::vector<RationalFunction> g;
    for (int v = 0; v < dim_; ++v) g.push_back(u.partial(p.vars[size_t(v)]));
    param_grad_.push_back(std::move(g));
  }
  int eqs = (has_surface_ ? 1 : 0) + int(p.params.size());
  if (eqs != dim_) throw continuation_error("system is not square");
}

Eigen::VectorXcd AmbientSystem::residual(
    const Eigen::VectorXcd& x, std::span<const std::complex<double>> targets) const {
  std::vector<std::complex<double>> pt(x.data(), x.data() + x.size());
  Eigen::VectorXcd r(dim_);
  int row = 0;
  if (has_surface_)
    r(row++) = p_->surface.eval(std::span<const std::complex<double>>(pt));
  for (size_t i = 0; i < p_->params.size(); ++i)
    r(row++) = p_->params[i].eval(std::span<const std::complex<double>>(pt)) -
               targets[i];
  return r;
}

Eigen::MatrixXcd AmbientSystem::jacobian(const Eigen::VectorXcd& x) const {
  std::vector<std::complex<double>> pt(x.data(), x.data() + x.size());
  Eigen::MatrixXcd J(dim_, dim_);
  int row = 0;
  if (has_surface_) {
    for (int v = 0; v < dim_; ++v)
      J(row, v) = surface_grad_[size_t(v)].eval(std::span<const std::complex<double>>(pt));
    ++row;
  }
  for (size_t i = 0; i < p_->params.size(); ++i) {
    for (int v = 0; v < dim_; ++v)
      J(row, v) =
          param_grad_[i][size_t(v)].eval(std::span<const std::complex<double>>(pt));
    ++row;
  }
  return J;
}

bool AmbientSystem::newton(Eigen::VectorXcd& x,
                           std::span<const std::complex<double>> targets,
                           double tol, int iters) const {
  double scale = std::max(1.0, x.norm());
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd r = residual(x, targets);
    if (r.norm() < tol * scale) return true;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(jacobian(x));
    Eigen::VectorXcd dx = lu.solve(r);
    if (!dx.allFinite()) return false;
    if (dx.norm() > 10 * scale) return false;  // diverging
    x -= dx;
  }
  return residual(x, targets).norm() < tol * scale;
}

Eigen::VectorXcd track_path(const AmbientSystem& sys, Eigen::VectorXcd x,
                            const TargetPath& path, const TargetPath& dpath,
                            double s0, double s1, int min_steps) {
  if (s0 == s1) return x;
  double span = s1 - s0;
  double h = span / std::max(min_steps, 1);
  double h_min = std::abs(span) / 4096.0;
  double s = s0;
  {
    auto t0 = path(s0);
    if (!sys.newton(x, t0)) throw continuation_error("start point does not satisfy the system");
  }
  while ((span > 0) ? (s < s1 - 1e-15 * std::abs(span)) : (s > s1 + 1e-15 * std::abs(span))) {
    double step = h;
    if ((span > 0 && s + step > s1) || (span < 0 && s + step < s1)) step = s1 - s;
    // tangent predictor: J dx = -dF/ds, where dF/ds = -dtargets/ds rows
    Eigen::VectorXcd xp = x;
    {
      auto dt = dpath(s);
      Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(sys.dim());
      int row = sys.dim() - sys.n_params();
      for (size_t i = 0; i < dt.size(); ++i) rhs(row + int(i)) = dt[i];
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.jacobian(x));
      Eigen::VectorXcd v = lu.solve(rhs);
      if (v.allFinite()) xp = x + step * v;
    }
    auto targets = path(s + step);
    Eigen::VectorXcd xc = xp;
    if (sys.newton(xc, targets) &&
        (xc - x).norm() < 0.5 * std::max(1.0, x.norm())) {
      x = xc;
      s += step;
      if (std::abs(h) < std::abs(span) / std::max(min_steps, 1))
        h *= 1.5;  // recover after halving
    } else {
      h /= 2;
      if (std::abs(h) < h_min)
        throw continuation_error("continuation step floor reached at s = " +
                                 std::to_string(s));
    }
  }
  return x;
}

Eigen::VectorXcd track_circle(const AmbientSystem& sys, Eigen::VectorXcd x,
                              std::vector<std::complex<double>> fixed_targets,
                              int pi, double delta, double theta0, double theta1,
                              int min_steps) {
  auto path = [&, fixed_targets](double s) {
    auto t = fixed_targets;
    t[size_t(pi)] = std::polar(delta, s);
    return t;
  };
  auto dpath = [&, fixed_targets](double s) {
    std::vector<std::complex<double>> t(fixed_targets.size(), 0.0);
    t[size_t(pi)] = std::complex<double>(0, 1) * std::polar(delta, s);
    return t;
  };
  return track_path(sys, std::move(x), path, dpath, theta0, theta1, min_steps);
}

}  // namespace parshin
