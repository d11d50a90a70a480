#include "perifrac/solver.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "perifrac/errors.hpp"
#include "perifrac/fractional.hpp"
#include "perifrac/norms.hpp"

namespace perifrac {

namespace {

double sup_norm(const SpectralField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.value(j) - b.value(j)));
  return m;
}

Eigen::VectorXd to_vector(const SpectralField& u) {
  Eigen::VectorXd v(u.size());
  for (int j = 0; j < u.size(); ++j) v(j) = u.value(j);
  return v;
}

SpectralField shifted_by(const SpectralField& u, const Eigen::VectorXd& step, double lambda) {
  std::vector<double> v(u.values());
  for (int j = 0; j < u.size(); ++j) v[static_cast<size_t>(j)] += lambda * step(j);
  return SpectralField(u.grid(), std::move(v));
}

// Newton correction with Tikhonov fallback: an exactly singular Jacobian
// produces non-finite entries under partial-pivot LU, in which case growing
// multiples of the identity are added until the solve is finite.
Eigen::VectorXd newton_correction(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs) {
  const double scale = J.cwiseAbs().maxCoeff();
  for (double delta : {0.0, 1e-12 * scale, 1e-8 * scale, 1e-4 * scale}) {
    Eigen::MatrixXd Jd = J;
    if (delta > 0.0) Jd.diagonal().array() += delta;
    Eigen::VectorXd d = Jd.partialPivLu().solve(rhs);
    if (d.allFinite()) return d;
  }
  throw SingularJacobian("correction non-finite even after Tikhonov retries");
}

using ResidualFn = std::function<SpectralField(const SpectralField&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const SpectralField&)>;

// Damped Newton on an arbitrary residual. A trial step is accepted when the
// residual sup-norm satisfies the Armijo-style decrease (1 - 1e-4 lambda);
// for positivity-constrained systems trials below the floor (or trials whose
// residual itself rejects the state) only count as feasibility rejections.
std::pair<SpectralField, int> damped_newton(SpectralField u, const SolverOptions& opts,
                                            bool positivity, const ResidualFn& res_fn,
                                            const JacobianFn& jac_fn) {
  SpectralField r = res_fn(u);
  double rs = sup_norm(r);
  int accepted = 0;
  while (true) {
    if (rs <= opts.tol) return {u, accepted};
    if (accepted >= opts.max_iter) {
      throw MaxIterExceeded("no convergence in " + std::to_string(opts.max_iter) +
                            " iterations, residual " + std::to_string(rs));
    }
    Eigen::MatrixXd J = jac_fn(u);
    Eigen::VectorXd d = newton_correction(J, -to_vector(r));

    double lambda = 1.0;
    bool ok = false;
    int infeasible = 0, trials = 0;
    for (int half = 0; half <= 30 && !ok; ++half, lambda *= 0.5) {
      SpectralField trial = shifted_by(u, d, lambda);
      ++trials;
      if (positivity && trial.min_value() < opts.min_u_floor) {
        ++infeasible;
        continue;
      }
      SpectralField rt = SpectralField::zeros(u.grid());
      try {
        rt = res_fn(trial);
      } catch (const PositivityViolated&) {
        ++infeasible;
        continue;
      }
      const double rts = sup_norm(rt);
      if (!std::isfinite(rts)) continue;
      if (rts < rs * (1.0 - 1e-4 * lambda)) {
        u = trial;
        r = rt;
        rs = rts;
        ok = true;
      }
    }
    if (!ok) {
      if (infeasible == trials) {
        throw PositivityViolated("every step length leaves the feasible cone");
      }
      throw MaxIterExceeded("line search stalled at residual " + std::to_string(rs));
    }
    ++accepted;
  }
}

double l2_distance_sq(const SpectralField& a, const SpectralField& b) {
  double acc = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double d = a.value(j) - b.value(j);
    acc += d * d;
  }
  return acc * a.grid().spacing();
}

}  // namespace

Solution finalize_solution(const SpectralField& u, const ProblemSpec& p, int iterations,
                           double tol) {
  SpectralField r = residual(u, p);
  FieldNorms nu = norms(u);
  return Solution{u,         p.t,   sup_norm(r),    iterations, tol,
                  mean(u),   u.min_value(), u.max_value(), nu.l2_deriv};
}

Solution newton_solve(const SpectralField& u0, const ProblemSpec& p, const SolverOptions& opts) {
  auto res = [&p](const SpectralField& u) { return residual(u, p); };
  auto jac = [&p](const SpectralField& u) { return jacobian(u, p); };
  auto [u, iters] = damped_newton(u0, opts, p.positivity_constrained(), res, jac);
  return finalize_solution(u, p, iters, opts.tol);
}

std::vector<Solution> deflated_search(const ProblemSpec& p,
                                      const std::vector<SpectralField>& seeds,
                                      const DeflationOptions& opts) {
  std::vector<Solution> found;
  const double w = seeds.empty() ? 0.0 : seeds.front().grid().spacing();

  for (const SpectralField& seed : seeds) {
    auto deflation = [&](const SpectralField& u) {
      double m = 1.0;
      for (const Solution& root : found) m *= 1.0 / l2_distance_sq(u, root.u) + 1.0;
      return m;
    };
    auto res = [&](const SpectralField& u) {
      SpectralField r = residual(u, p);
      const double m = deflation(u);
      std::vector<double> v(r.values());
      for (double& x : v) x *= m;
      return SpectralField(u.grid(), std::move(v));
    };
    auto jac = [&](const SpectralField& u) {
      Eigen::MatrixXd J = jacobian(u, p);
      const double m = deflation(u);
      if (found.empty()) return J;
      // grad of the deflation factor: sum over roots of the chain rule
      // through 1/d_i^2, sharing the product via m / (1 + 1/d_i^2)
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(u.size());
      for (const Solution& root : found) {
        const double d2 = l2_distance_sq(u, root.u);
        const double partial = m / (1.0 / d2 + 1.0) * (-1.0 / (d2 * d2));
        for (int j = 0; j < u.size(); ++j) {
          grad(j) += partial * 2.0 * w * (u.value(j) - root.u.value(j));
        }
      }
      Eigen::VectorXd r = to_vector(residual(u, p));
      return Eigen::MatrixXd(m * J + r * grad.transpose());
    };

    try {
      auto [u, iters] = damped_newton(seed, opts.newton, p.positivity_constrained(), res, jac);
      Solution sol = finalize_solution(u, p, iters, opts.newton.tol);
      if (sol.residual_sup > opts.newton.tol) continue;
      bool fresh = true;
      for (const Solution& root : found) {
        if (sup_distance(sol.u, root.u) < opts.radius) {
          fresh = false;
          break;
        }
      }
      if (fresh) found.push_back(std::move(sol));
    } catch (const Error&) {
      continue;
    }
  }
  return found;
}

MarginReport check_sub_super(const SpectralField& candidate, const ProblemSpec& p, Side side) {
  SpectralField r = residual(candidate, p);
  MarginReport rep;
  rep.margins.resize(static_cast<size_t>(r.size()));
  const double sign = (side == Side::Sub) ? 1.0 : -1.0;
  double mn = sign * r.value(0);
  for (int j = 0; j < r.size(); ++j) {
    const double m = sign * r.value(j);
    rep.margins[static_cast<size_t>(j)] = m;
    mn = std::min(mn, m);
  }
  rep.min_margin = mn;
  return rep;
}

SubSuperPair make_sub_super_pair(const SpectralField& eta, const SpectralField& beta,
                                 const ProblemSpec& p) {
  if (eta.grid() != beta.grid()) throw InvalidGrid("pair lives on different grids");
  for (int j = 0; j < eta.size(); ++j) {
    if (eta.value(j) > beta.value(j)) {
      throw InvalidPair("subsolution exceeds supersolution at node " + std::to_string(j));
    }
  }
  MarginReport sub = check_sub_super(eta, p, Side::Sub);
  MarginReport super = check_sub_super(beta, p, Side::Super);
  return SubSuperPair{eta, beta, sub.min_margin, super.min_margin};
}

Solution truncated_fixed_point(const ProblemSpec& p, const SubSuperPair& pair,
                               const SolverOptions& opts) {
  const SpectralField& eta = pair.subsolution;
  const SpectralField& cap = pair.supersolution;
  if (eta.grid() != p.grid() || cap.grid() != p.grid()) {
    throw InvalidGrid("pair and problem grids differ");
  }
  for (int j = 0; j < eta.size(); ++j) {
    if (eta.value(j) > cap.value(j)) {
      throw InvalidPair("subsolution exceeds supersolution at node " + std::to_string(j));
    }
  }
  const int n = p.grid().size();
  const double sigma = 1.0;

  auto clamp_at = [&](const SpectralField& u, int j) {
    return std::min(std::max(u.value(j), eta.value(j)), cap.value(j));
  };
  // the nonlinear family term evaluated at the truncated state
  auto family_term = [&](double v, int j) {
    switch (p.kind()) {
      case ProblemKind::Smooth:
        return p.smooth().g(v);
      case ProblemKind::SingularMems:
        return v + p.mems().beta.value(j) * std::pow(v, -p.mems().mu);
      case ProblemKind::AttractiveRepulsive: {
        const auto& fam = p.ar();
        return fam.e.value(j) - fam.gamma.value(j) * std::pow(v, -fam.mu) +
               fam.beta.value(j) * std::pow(v, -fam.rho);
      }
    }
    return 0.0;
  };
  auto family_slope = [&](double v, int j) {
    switch (p.kind()) {
      case ProblemKind::Smooth:
        return p.smooth().dg(v);
      case ProblemKind::SingularMems:
        return 1.0 - p.mems().mu * p.mems().beta.value(j) * std::pow(v, -p.mems().mu - 1.0);
      case ProblemKind::AttractiveRepulsive: {
        const auto& fam = p.ar();
        return fam.mu * fam.gamma.value(j) * std::pow(v, -fam.mu - 1.0) -
               fam.rho * fam.beta.value(j) * std::pow(v, -fam.rho - 1.0);
      }
    }
    return 0.0;
  };
  auto forcing = [&](const SpectralField& u) {
    std::vector<double> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double v = clamp_at(u, j);
      f[static_cast<size_t>(j)] = -sigma * v + p.t + p.h.value(j) - family_term(v, j);
    }
    return SpectralField(p.grid(), std::move(f));
  };

  // Picard sweep; the resolvent contracts only when the family slope is mild,
  // so stagnation hands over to Newton on the truncated residual.
  SpectralField u = (eta + cap) * 0.5;
  int sweeps = 0;
  double prev_delta = std::numeric_limits<double>::infinity();
  int flat = 0;
  for (; sweeps < 40; ++sweeps) {
    SpectralField next = resolvent_solve(forcing(u), p.s, p.c, sigma);
    const double delta = sup_distance(next, u);
    u = next;
    if (delta <= 0.01 * opts.tol) break;
    if (delta > 0.9 * prev_delta) {
      if (++flat >= 3) break;
    } else {
      flat = 0;
    }
    prev_delta = delta;
  }

  auto trunc_residual = [&](const SpectralField& v) {
    SpectralField lin = apply_fractional(v, p.s);
    if (p.c != 0.0) lin = lin + apply_derivative(v) * p.c;
    SpectralField f = forcing(v);
    std::vector<double> r(lin.values());
    for (int j = 0; j < n; ++j) {
      r[static_cast<size_t>(j)] += -sigma * v.value(j) - f.value(j);
    }
    return SpectralField(p.grid(), std::move(r));
  };
  auto trunc_jacobian = [&](const SpectralField& v) {
    Eigen::MatrixXd J = linear_operator_matrix(p.grid(), p.s, p.c);
    J.diagonal().array() -= sigma;
    for (int j = 0; j < n; ++j) {
      const bool inside = v.value(j) > eta.value(j) && v.value(j) < cap.value(j);
      if (inside) J(j, j) += sigma + family_slope(clamp_at(v, j), j);
    }
    return J;
  };

  int newton_iters = 0;
  if (sup_norm(trunc_residual(u)) > opts.tol) {
    SolverOptions inner = opts;
    try {
      auto [v, iters] = damped_newton(u, inner, false, trunc_residual, trunc_jacobian);
      u = v;
      newton_iters = iters;
    } catch (const Error& e) {
      throw NoConvergence(std::string("truncated iteration failed: ") + e.what());
    }
  }

  for (int j = 0; j < n; ++j) {
    if (u.value(j) < eta.value(j) - opts.tol || u.value(j) > cap.value(j) + opts.tol) {
      throw NoConvergence("iterate escaped the sub/supersolution bracket at node " +
                          std::to_string(j));
    }
  }
  Solution sol = finalize_solution(u, p, sweeps + newton_iters, opts.tol);
  if (sol.residual_sup > opts.tol) {
    throw NoConvergence("bracketed iterate misses the untruncated equation, residual " +
                        std::to_string(sol.residual_sup));
  }
  return sol;
}

}  // namespace perifrac
