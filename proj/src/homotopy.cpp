#include "perifrac/homotopy.hpp"

#include <cmath>
#include <string>
#include <vector>

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

struct Means {
  double gamma, beta, e;
};

Means family_means(const ProblemSpec& ar) {
  if (ar.kind() != ProblemKind::AttractiveRepulsive) {
    throw PreconditionViolation("scalar equilibrium needs the attractive-repulsive family");
  }
  return Means{mean(ar.ar().gamma), mean(ar.ar().beta), mean(ar.ar().e)};
}

}  // namespace

double scalar_equilibrium(const ProblemSpec& ar) {
  const Means m = family_means(ar);
  if (!(m.gamma > 0.0)) {
    throw PreconditionViolation("mean gamma must be positive, got " + std::to_string(m.gamma));
  }
  if (!(m.e > 0.0)) {
    throw PreconditionViolation("mean e must be positive, got " + std::to_string(m.e));
  }
  const double mu = ar.ar().mu, rho = ar.ar().rho;
  auto phi = [&](double a) {
    return m.gamma * std::pow(a, -mu) - m.beta * std::pow(a, -rho) - m.e;
  };

  // log-spaced scan for a sign change, then bisection to machine width
  const int scan = 321;
  double prev_a = 0.0, prev_phi = 0.0;
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int i = 0; i < scan; ++i) {
    const double a = std::pow(10.0, -8.0 + 16.0 * i / (scan - 1));
    const double f = phi(a);
    if (f == 0.0) return a;
    if (i > 0 && prev_phi * f < 0.0) {
      lo = prev_a;
      hi = a;
      bracketed = true;
      break;
    }
    prev_a = a;
    prev_phi = f;
  }
  if (!bracketed) throw NoBracket("phi has no sign change on [1e-8, 1e8]");

  double flo = phi(lo);
  for (int iter = 0; iter < 300; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phi(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, std::abs(mid))) break;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(phi(root)) > 1e-12) {
    throw NoConvergence("bisection left |phi| = " + std::to_string(std::abs(phi(root))));
  }
  return root;
}

HomotopyResult mawhin_homotopy(const ProblemSpec& ar, int lambda_steps,
                               const SolverOptions& opts) {
  if (ar.kind() != ProblemKind::AttractiveRepulsive) {
    throw PreconditionViolation("homotopy needs the attractive-repulsive family");
  }
  if (lambda_steps < 1) throw PreconditionViolation("lambda_steps must be at least 1");
  const ArData& fam = ar.ar();
  const PeriodicGrid& g = ar.grid();
  const int n = g.size();

  auto nonlinearity = [&](const SpectralField& u) {
    if (!(u.min_value() > 0.0)) {
      throw PositivityViolated("homotopy state has min " + std::to_string(u.min_value()));
    }
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double uv = u.value(j);
      v[static_cast<size_t>(j)] = fam.gamma.value(j) * std::pow(uv, -fam.mu) -
                                  fam.beta.value(j) * std::pow(uv, -fam.rho) - fam.e.value(j);
    }
    return v;
  };
  auto nonlinearity_slope = [&](const SpectralField& u) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double uv = u.value(j);
      v[static_cast<size_t>(j)] = -fam.mu * fam.gamma.value(j) * std::pow(uv, -fam.mu - 1.0) +
                                  fam.rho * fam.beta.value(j) * std::pow(uv, -fam.rho - 1.0);
    }
    return v;
  };

  using ResidualFn = std::function<SpectralField(const SpectralField&)>;
  using JacobianFn = std::function<Eigen::MatrixXd(const SpectralField&)>;
  auto residual_at = [&](double lambda) -> ResidualFn {
    return [&, lambda](const SpectralField& u) {
      std::vector<double> nl = nonlinearity(u);
      double nl_mean = 0.0;
      for (double v : nl) nl_mean += v;
      nl_mean /= n;
      SpectralField lin = apply_fractional(u, ar.s);
      if (ar.c != 0.0) lin = lin + apply_derivative(u) * ar.c;
      std::vector<double> r(lin.values());
      for (int j = 0; j < n; ++j) {
        r[static_cast<size_t>(j)] -= (1.0 - lambda) * nl_mean + lambda * nl[static_cast<size_t>(j)];
      }
      return SpectralField(g, std::move(r));
    };
  };
  auto jacobian_at = [&](double lambda) -> JacobianFn {
    return [&, lambda](const SpectralField& u) {
      Eigen::MatrixXd J = linear_operator_matrix(g, ar.s, ar.c);
      std::vector<double> slope = nonlinearity_slope(u);
      for (int j = 0; j < n; ++j) {
        J(j, j) -= lambda * slope[static_cast<size_t>(j)];
        for (int l = 0; l < n; ++l) {
          J(j, l) -= (1.0 - lambda) * slope[static_cast<size_t>(l)] / n;
        }
      }
      return J;
    };
  };

  HomotopyResult out{Solution{SpectralField::zeros(g), 0, 0, 0, opts.tol, 0, 0, 0, 0},
                     scalar_equilibrium(ar),
                     {}};
  SpectralField u = SpectralField::constant(g, out.a_start);
  out.path.push_back(HomotopyState{0.0, u});

  const double base = 1.0 / lambda_steps;
  double lambda = 0.0, step = base;
  int total_iters = 0;
  while (lambda < 1.0) {
    const double lambda_next = std::min(1.0, lambda + step);
    try {
      auto res = residual_at(lambda_next);
      auto jac = jacobian_at(lambda_next);
      SpectralField r0 = res(u);
      SolverOptions inner = opts;
      // reuse the damped Newton through newton-like stepping on the blended system
      int iters = 0;
      SpectralField cur = u;
      double rs = sup_norm(r0);
      while (rs > inner.tol) {
        if (iters >= inner.max_iter) {
          throw MaxIterExceeded("homotopy corrector exhausted its budget");
        }
        Eigen::MatrixXd J = jac(cur);
        Eigen::VectorXd rhs(n);
        SpectralField r = res(cur);
        for (int j = 0; j < n; ++j) rhs(j) = -r.value(j);
        Eigen::VectorXd delta = J.partialPivLu().solve(rhs);
        if (!delta.allFinite()) throw SingularJacobian("homotopy corrector solve non-finite");
        double lam = 1.0;
        bool ok = false;
        for (int half = 0; half <= 25 && !ok; ++half, lam *= 0.5) {
          std::vector<double> vals(cur.values());
          for (int j = 0; j < n; ++j) vals[static_cast<size_t>(j)] += lam * delta(j);
          SpectralField trial(g, std::move(vals));
          if (trial.min_value() < inner.min_u_floor) continue;
          double ts;
          try {
            ts = sup_norm(res(trial));
          } catch (const PositivityViolated&) {
            continue;
          }
          if (!std::isfinite(ts)) continue;
          if (ts < rs * (1.0 - 1e-4 * lam)) {
            cur = std::move(trial);
            rs = ts;
            ok = true;
          }
        }
        if (!ok) throw MaxIterExceeded("homotopy corrector stalled");
        ++iters;
      }
      u = cur;
      total_iters += iters;
      lambda = lambda_next;
      out.path.push_back(HomotopyState{lambda, u});
      step = std::min(base, 2.0 * step);
    } catch (const Error&) {
      step *= 0.5;
      if (step < 1e-4) {
        throw HomotopyStall("lambda step collapsed below 1e-4 at lambda = " +
                            std::to_string(lambda));
      }
    }
  }
  out.final = finalize_solution(u, ar, total_iters, opts.tol);
  return out;
}

}  // namespace perifrac
