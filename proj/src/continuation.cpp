#include "perifrac/continuation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "perifrac/errors.hpp"

namespace perifrac {

namespace {

double sup_norm(const SpectralField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

struct ExtendedPoint {
  SpectralField u;
  double t;
};

// One bordered Newton corrector for the extended system
//   residual(u, t) = 0
//   w <du_pred, u - u_anchor> + dt_pred (t - t_anchor) = ds
// returning the converged point, or nothing when it fails.
struct Corrector {
  const ProblemSpec& p;
  const SolverOptions& opts;
  double w;  // metric weight 2pi/n

  std::pair<ExtendedPoint, int> run(ExtendedPoint guess, const Tangent& pred,
                                    const ExtendedPoint& anchor, double ds) const {
    const int n = guess.u.size();
    ExtendedPoint cur = std::move(guess);

    auto constraint = [&](const ExtendedPoint& q) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += pred.du[static_cast<size_t>(j)] * (q.u.value(j) - anchor.u.value(j));
      }
      return w * acc + pred.dt * (q.t - anchor.t) - ds;
    };
    auto merit = [&](const ExtendedPoint& q) {
      SpectralField r = residual(q.u, p.with_t(q.t));
      return std::max(sup_norm(r), std::abs(constraint(q)));
    };

    double m = merit(cur);
    for (int iter = 0; iter < 25; ++iter) {
      if (m <= opts.tol) return {cur, iter};

      const ProblemSpec pt = p.with_t(cur.t);
      SpectralField r = residual(cur.u, pt);
      Eigen::MatrixXd J = jacobian(cur.u, pt);
      Eigen::MatrixXd B(n + 1, n + 1);
      B.topLeftCorner(n, n) = J;
      for (int j = 0; j < n; ++j) {
        B(j, n) = -1.0;  // d residual / dt
        B(n, j) = w * pred.du[static_cast<size_t>(j)];
      }
      B(n, n) = pred.dt;
      Eigen::VectorXd rhs(n + 1);
      for (int j = 0; j < n; ++j) rhs(j) = -r.value(j);
      rhs(n) = -constraint(cur);
      Eigen::VectorXd step = B.partialPivLu().solve(rhs);
      if (!step.allFinite()) throw SingularJacobian("bordered solve produced non-finite step");

      double lambda = 1.0;
      bool ok = false;
      for (int half = 0; half <= 20 && !ok; ++half, lambda *= 0.5) {
        std::vector<double> vals(cur.u.values());
        for (int j = 0; j < n; ++j) vals[static_cast<size_t>(j)] += lambda * step(j);
        ExtendedPoint trial{SpectralField(cur.u.grid(), std::move(vals)),
                            cur.t + lambda * step(n)};
        if (p.positivity_constrained() && trial.u.min_value() < opts.min_u_floor) continue;
        double mt;
        try {
          mt = merit(trial);
        } catch (const PositivityViolated&) {
          continue;
        }
        if (!std::isfinite(mt)) continue;
        if (mt < m * (1.0 - 1e-4 * lambda)) {
          cur = std::move(trial);
          m = mt;
          ok = true;
        }
      }
      if (!ok) throw MaxIterExceeded("bordered corrector stalled at merit " + std::to_string(m));
    }
    throw MaxIterExceeded("bordered corrector exhausted its budget");
  }
};

// Tangent through the bordered system with the given border row; normalized
// in the metric and not yet oriented.
Tangent raw_tangent(const ProblemSpec& p, const ExtendedPoint& at, const Tangent& border,
                    double w) {
  const int n = at.u.size();
  const ProblemSpec pt = p.with_t(at.t);
  Eigen::MatrixXd B(n + 1, n + 1);
  B.topLeftCorner(n, n) = jacobian(at.u, pt);
  for (int j = 0; j < n; ++j) {
    B(j, n) = -1.0;
    B(n, j) = w * border.du[static_cast<size_t>(j)];
  }
  B(n, n) = border.dt;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd tau = B.partialPivLu().solve(rhs);
  if (!tau.allFinite()) throw SingularJacobian("tangent solve produced non-finite values");

  double norm2 = tau(n) * tau(n);
  for (int j = 0; j < n; ++j) norm2 += w * tau(j) * tau(j);
  const double scale = 1.0 / std::sqrt(norm2);
  Tangent out;
  out.du.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) out.du[static_cast<size_t>(j)] = tau(j) * scale;
  out.dt = tau(n) * scale;
  return out;
}

double metric_dot(const Tangent& a, const Tangent& b, double w) {
  double acc = a.dt * b.dt;
  for (size_t j = 0; j < a.du.size(); ++j) acc += w * a.du[j] * b.du[j];
  return acc;
}

void orient_along(Tangent& tau, const Tangent& reference, double w) {
  if (metric_dot(tau, reference, w) < 0.0) {
    for (double& d : tau.du) d = -d;
    tau.dt = -tau.dt;
  }
}

}  // namespace

Branch continue_natural(const ProblemSpec& p, double t_from, double t_to, double dt,
                        const SpectralField& seed, const SolverOptions& opts) {
  Branch br{p.with_t(t_from), {}, {}, {}, BranchStop::ReachedTarget};
  Solution first = [&] {
    try {
      return newton_solve(seed, p.with_t(t_from), opts);
    } catch (const Error& e) {
      throw SeedFailed(std::string("first solve at t = ") + std::to_string(t_from) +
                       " failed: " + e.what());
    }
  }();
  br.points.push_back(std::move(first));
  if (t_to == t_from) return br;

  const double dir = (t_to > t_from) ? 1.0 : -1.0;
  double t = t_from;
  double step = dt;
  while (t != t_to) {
    double t_next = t + dir * step;
    if (dir * (t_next - t_to) > 0.0) t_next = t_to;
    try {
      Solution sol = newton_solve(br.points.back().u, p.with_t(t_next), opts);
      br.points.push_back(std::move(sol));
      t = t_next;
      step = std::min(dt, 2.0 * step);
    } catch (const Error&) {
      step *= 0.5;
      if (step < dt / 1024.0) {
        br.stop = BranchStop::FoldSuspected;
        return br;
      }
    }
  }
  return br;
}

Branch continue_arclength(const ProblemSpec& p, const Solution& start, double ds,
                          int max_steps, const SolverOptions& opts, int prefer_dt_sign) {
  if (p.kind() == ProblemKind::AttractiveRepulsive) {
    throw PreconditionViolation("the attractive-repulsive family has no scalar parameter");
  }
  const int n = start.u.size();
  const double w = start.u.grid().spacing();
  Corrector corrector{p, opts, w};

  Branch br{p.with_t(start.t), {}, {}, {}, BranchStop::ReachedTarget};
  br.points.push_back(start);

  // initial tangent: border row picks the t-direction, orientation by caller
  Tangent init_border;
  init_border.du.assign(static_cast<size_t>(n), 0.0);
  init_border.dt = 1.0;
  ExtendedPoint cur{start.u, start.t};
  Tangent tau = raw_tangent(p, cur, init_border, w);
  if (std::abs(tau.dt) > 1e-13 && tau.dt * prefer_dt_sign < 0.0) {
    for (double& d : tau.du) d = -d;
    tau.dt = -tau.dt;
  }
  br.tangents.push_back(tau);

  double step = ds;
  for (int k = 0; k < max_steps; ++k) {
    bool advanced = false;
    while (!advanced) {
      std::vector<double> vals(cur.u.values());
      for (int j = 0; j < n; ++j) vals[static_cast<size_t>(j)] += step * tau.du[static_cast<size_t>(j)];
      ExtendedPoint guess{SpectralField(cur.u.grid(), std::move(vals)), cur.t + step * tau.dt};
      try {
        auto [next, iters] = corrector.run(std::move(guess), tau, cur, step);
        Tangent tau_next = raw_tangent(p, next, tau, w);
        orient_along(tau_next, tau, w);
        if (tau_next.dt * tau.dt < 0.0) {
          br.folds.push_back(static_cast<int>(br.points.size()) - 1);
        }
        cur = next;
        br.points.push_back(finalize_solution(cur.u, p.with_t(cur.t), iters, opts.tol));
        br.tangents.push_back(tau_next);
        tau = tau_next;
        advanced = true;
        if (iters <= 4) step = std::min(2.0 * ds, 1.5 * step);
      } catch (const Error&) {
        step *= 0.5;
        if (step < 1e-8) throw StepCollapse("arclength step collapsed below 1e-8");
      }
    }
  }
  return br;
}

FoldPoint locate_fold(const Branch& branch, const SolverOptions& opts) {
  if (branch.folds.empty()) {
    throw NoFoldInBranch("branch records no tangent sign change");
  }
  const int i = branch.folds.front();
  const Solution& left = branch.points[static_cast<size_t>(i)];
  const Solution& right = branch.points[static_cast<size_t>(i) + 1];
  const Tangent& tau = branch.tangents[static_cast<size_t>(i)];
  const ProblemSpec& p = branch.problem;
  const double w = left.u.grid().spacing();
  Corrector corrector{p, opts, w};
  ExtendedPoint anchor{left.u, left.t};

  // arclength gap between the bracketing points in the bordered metric
  double gap2 = (right.t - left.t) * (right.t - left.t);
  for (int j = 0; j < left.u.size(); ++j) {
    const double d = right.u.value(j) - left.u.value(j);
    gap2 += w * d * d;
  }
  const double gap = std::sqrt(gap2);

  auto eval = [&](double delta) -> std::pair<ExtendedPoint, double> {
    std::vector<double> vals(anchor.u.values());
    for (int j = 0; j < anchor.u.size(); ++j) {
      vals[static_cast<size_t>(j)] += delta * tau.du[static_cast<size_t>(j)];
    }
    ExtendedPoint guess{SpectralField(anchor.u.grid(), std::move(vals)),
                        anchor.t + delta * tau.dt};
    auto [point, iters] = corrector.run(std::move(guess), tau, anchor, delta);
    (void)iters;
    Tangent here = raw_tangent(p, point, tau, w);
    orient_along(here, tau, w);
    return {std::move(point), here.dt};
  };

  double lo = 0.0, hi = gap;
  auto [plo, flo] = eval(lo);
  auto [phi, fhi] = eval(hi);
  ExtendedPoint best = (std::abs(flo) < std::abs(fhi)) ? plo : phi;
  double fbest = (std::abs(flo) < std::abs(fhi)) ? flo : fhi;
  if (flo * fhi > 0.0) {
    // tangent components at the stored endpoints must bracket by construction
    throw NoFoldInBranch("tangent t-component does not change sign across the bracket");
  }
  for (int iter = 0; iter < 80 && std::abs(fbest) > 1e-8; ++iter) {
    double mid;
    const double denom = fhi - flo;
    if (std::abs(denom) > 1e-300) {
      mid = lo - flo * (hi - lo) / denom;  // secant through the bracket
      const double margin = 0.1 * (hi - lo);
      if (!(mid > lo + margin && mid < hi - margin)) mid = 0.5 * (lo + hi);
    } else {
      mid = 0.5 * (lo + hi);
    }
    auto [pm, fm] = eval(mid);
    if (std::abs(fm) < std::abs(fbest)) {
      best = pm;
      fbest = fm;
    }
    if (fm * flo <= 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-15 * std::max(1.0, gap)) break;
  }
  return FoldPoint{best.t, best.u, i};
}

}  // namespace perifrac
