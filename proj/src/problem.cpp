#include "perifrac/problem.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "fft_internal.hpp"
#include "perifrac/errors.hpp"
#include "perifrac/fractional.hpp"

namespace perifrac {

namespace {

void require_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidOrder("fractional order must lie in (0,1), got " + std::to_string(s));
  }
}

void require_drift(double c) {
  if (!(c >= 0.0)) {
    throw PreconditionViolation("drift coefficient must be nonnegative, got " + std::to_string(c));
  }
}

void require_positive_state(const SpectralField& u, const char* family) {
  const double m = u.min_value();
  if (!(m > 0.0)) {
    throw PositivityViolated(std::string(family) + " state has min " + std::to_string(m));
  }
}

}  // namespace

ProblemSpec make_smooth_problem(double s, double c, double t, SpectralField h,
                                SmoothNonlinearity g) {
  require_order(s);
  require_drift(c);
  if (!g.g || !g.dg) throw PreconditionViolation("smooth nonlinearity needs g and dg");
  return ProblemSpec{s, c, t, std::move(h), std::move(g)};
}

ProblemSpec make_mems_problem(double s, double c, double t, double mu, SpectralField beta) {
  require_order(s);
  require_drift(c);
  if (!(mu >= 1.0)) {
    throw PreconditionViolation("singular exponent must be at least 1, got " + std::to_string(mu));
  }
  if (!(beta.min_value() > 0.0)) {
    throw InvalidBeta("beta must be strictly positive, min is " +
                      std::to_string(beta.min_value()));
  }
  SpectralField h = SpectralField::zeros(beta.grid());
  return ProblemSpec{s, c, t, std::move(h), MemsData{mu, std::move(beta)}};
}

ProblemSpec make_ar_problem(double s, double c, double mu, double rho, SpectralField gamma,
                            SpectralField beta, SpectralField e) {
  require_order(s);
  require_drift(c);
  if (!(mu >= 1.0 && rho > 0.0 && mu >= rho)) {
    throw PreconditionViolation("exponents must satisfy mu >= 1, mu >= rho > 0, got mu = " +
                                std::to_string(mu) + ", rho = " + std::to_string(rho));
  }
  if (gamma.grid() != beta.grid() || gamma.grid() != e.grid()) {
    throw InvalidGrid("coefficient fields live on different grids");
  }
  SpectralField h = SpectralField::zeros(gamma.grid());
  return ProblemSpec{s, c, 0.0, std::move(h),
                     ArData{mu, rho, std::move(gamma), std::move(beta), std::move(e)}};
}

SpectralField residual(const SpectralField& u, const ProblemSpec& p) {
  if (u.grid() != p.grid()) throw InvalidGrid("state and problem grids differ");
  SpectralField lin = apply_fractional(u, p.s);
  if (p.c != 0.0) lin = lin + apply_derivative(u) * p.c;

  const int n = u.size();
  std::vector<double> r(lin.values());
  switch (p.kind()) {
    case ProblemKind::Smooth: {
      const auto& fam = p.smooth();
      for (int j = 0; j < n; ++j) {
        r[static_cast<size_t>(j)] += fam.g(u.value(j)) - p.t - p.h.value(j);
      }
      break;
    }
    case ProblemKind::SingularMems: {
      require_positive_state(u, "singular");
      const auto& fam = p.mems();
      for (int j = 0; j < n; ++j) {
        r[static_cast<size_t>(j)] +=
            u.value(j) + fam.beta.value(j) * std::pow(u.value(j), -fam.mu) - p.t;
      }
      break;
    }
    case ProblemKind::AttractiveRepulsive: {
      require_positive_state(u, "attractive-repulsive");
      const auto& fam = p.ar();
      for (int j = 0; j < n; ++j) {
        const double uv = u.value(j);
        r[static_cast<size_t>(j)] += fam.e.value(j) - fam.gamma.value(j) * std::pow(uv, -fam.mu) +
                                     fam.beta.value(j) * std::pow(uv, -fam.rho);
      }
      break;
    }
  }
  return SpectralField(u.grid(), std::move(r));
}

std::vector<double> nonlinearity_derivative(const SpectralField& u, const ProblemSpec& p) {
  const int n = u.size();
  std::vector<double> d(static_cast<size_t>(n), 0.0);
  switch (p.kind()) {
    case ProblemKind::Smooth: {
      const auto& fam = p.smooth();
      for (int j = 0; j < n; ++j) d[static_cast<size_t>(j)] = fam.dg(u.value(j));
      break;
    }
    case ProblemKind::SingularMems: {
      require_positive_state(u, "singular");
      const auto& fam = p.mems();
      for (int j = 0; j < n; ++j) {
        d[static_cast<size_t>(j)] =
            1.0 - fam.mu * fam.beta.value(j) * std::pow(u.value(j), -fam.mu - 1.0);
      }
      break;
    }
    case ProblemKind::AttractiveRepulsive: {
      require_positive_state(u, "attractive-repulsive");
      const auto& fam = p.ar();
      for (int j = 0; j < n; ++j) {
        const double uv = u.value(j);
        d[static_cast<size_t>(j)] =
            fam.mu * fam.gamma.value(j) * std::pow(uv, -fam.mu - 1.0) -
            fam.rho * fam.beta.value(j) * std::pow(uv, -fam.rho - 1.0);
      }
      break;
    }
  }
  return d;
}

Eigen::MatrixXd linear_operator_matrix(const PeriodicGrid& g, double s, double c) {
  require_order(s);
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, Eigen::MatrixXd> cache;
  const auto key = std::make_tuple(g.size(), s, c);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const int n = g.size();
  FractionalSymbol sym = FractionalSymbol::make(s, n);
  std::vector<std::complex<double>> spec(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int k = detail::frequency_of_slot(n, m);
    const double drift = (k == -n / 2) ? 0.0 : c * k;
    spec[static_cast<size_t>(m)] =
        std::complex<double>(sym.multipliers[static_cast<size_t>(m)], drift) / static_cast<double>(n);
  }
  // first column of the circulant realization; rows are shifted copies
  std::vector<double> col = detail::inverse_values(spec);
  Eigen::MatrixXd L(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      L(j, l) = col[static_cast<size_t>((j - l + n) % n)];
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, L);
  return L;
}

Eigen::MatrixXd jacobian(const SpectralField& u, const ProblemSpec& p) {
  Eigen::MatrixXd J = linear_operator_matrix(u.grid(), p.s, p.c);
  std::vector<double> d = nonlinearity_derivative(u, p);
  for (int j = 0; j < u.size(); ++j) J(j, j) += d[static_cast<size_t>(j)];
  return J;
}

}  // namespace perifrac
