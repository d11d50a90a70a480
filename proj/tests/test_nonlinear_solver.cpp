#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "perifrac/errors.hpp"
#include "perifrac/norms.hpp"
#include "perifrac/problem.hpp"
#include "perifrac/solver.hpp"

using namespace perifrac;

namespace {

ProblemSpec quadratic_problem(const PeriodicGrid& g, double t, double c = 1.0,
                              double s = 0.5, SpectralField* h = nullptr) {
  SpectralField hh = h ? *h : SpectralField::zeros(g);
  SmoothNonlinearity q{[](double u) { return u * u; }, [](double u) { return 2.0 * u; }, true};
  return make_smooth_problem(s, c, t, hh, q);
}

ProblemSpec linear_problem(const PeriodicGrid& g, double t, double s) {
  SpectralField h = sample(g, [](double x) { return std::cos(x); });
  SmoothNonlinearity lin{[](double u) { return u; }, [](double) { return 1.0; }, false};
  return make_smooth_problem(s, 1.0, t, h, lin);
}

// middle root of u^3 - 2.5 u^2 + 1 = 0 (constant state at t = 2.5, mu = 2)
constexpr double kMemsLowRoot25 = 0.7575690235640352607;
constexpr double kGolden = 1.6180339887498948482;

}  // namespace

TEST_CASE("residual of a constant state is the scalar equation") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 0.25);
  SpectralField u = SpectralField::constant(g, 0.4);
  SpectralField r = residual(u, p);
  for (int j = 0; j < g.size(); ++j) {
    CHECK(r.value(j) == doctest::Approx(-0.09).epsilon(1e-13));
  }
}

TEST_CASE("residual of the closed-form solution of the linear problem vanishes") {
  // u = 2 + sin x solves Ds u + u' + u = 2 + cos x for every s: the pure mode
  // passes through Ds with eigenvalue -1.
  for (double s : {0.25, 0.5, 0.75}) {
    PeriodicGrid g = make_grid(64);
    ProblemSpec p = linear_problem(g, 2.0, s);
    SpectralField u = sample(g, [](double x) { return 2.0 + std::sin(x); });
    CHECK(testutil::sup_abs(residual(u, p)) < 1e-12);
  }
}

TEST_CASE("singular family residuals at constant states") {
  PeriodicGrid g = make_grid(32);
  SpectralField beta = SpectralField::constant(g, 1.0);
  ProblemSpec mems = make_mems_problem(0.5, 1.0, 2.5, 2.0, beta);
  SpectralField one = SpectralField::constant(g, 1.0);
  SpectralField rm = residual(one, mems);
  for (int j = 0; j < g.size(); ++j) CHECK(rm.value(j) == doctest::Approx(-0.5).epsilon(1e-13));

  ProblemSpec ar = make_ar_problem(0.5, 1.0, 2.0, 1.0, SpectralField::constant(g, 1.0),
                                   SpectralField::constant(g, -0.2),
                                   SpectralField::constant(g, 1.0));
  SpectralField ra = residual(one, ar);
  for (int j = 0; j < g.size(); ++j) CHECK(ra.value(j) == doctest::Approx(-0.2).epsilon(1e-13));
}

TEST_CASE("singular residuals reject nonpositive states") {
  PeriodicGrid g = make_grid(16);
  ProblemSpec mems = make_mems_problem(0.5, 1.0, 2.0, 2.0, SpectralField::constant(g, 1.0));
  CHECK_THROWS_AS(residual(SpectralField::constant(g, -0.5), mems), PositivityViolated);
  CHECK_THROWS_AS(residual(SpectralField::zeros(g), mems), PositivityViolated);
}

TEST_CASE("problem constructors validate their data") {
  PeriodicGrid g = make_grid(16);
  SpectralField one = SpectralField::constant(g, 1.0);
  SpectralField h = SpectralField::zeros(g);
  SmoothNonlinearity q{[](double u) { return u * u; }, [](double u) { return 2.0 * u; }, true};
  CHECK_THROWS_AS(make_smooth_problem(1.5, 1.0, 0.0, h, q), InvalidOrder);
  CHECK_THROWS_AS(make_smooth_problem(0.5, -1.0, 0.0, h, q), PreconditionViolation);
  CHECK_THROWS_AS(make_mems_problem(0.5, 1.0, 2.0, 0.5, one), PreconditionViolation);
  CHECK_THROWS_AS(make_mems_problem(0.5, 1.0, 2.0, 2.0, SpectralField::zeros(g)), InvalidBeta);
  CHECK_THROWS_AS(make_ar_problem(0.5, 1.0, 1.0, 2.0, one, one, one), PreconditionViolation);
}

TEST_CASE("Jacobian row sums give the diagonal derivative") {
  // the circulant part annihilates constants, so J * 1 = g'(u) nodally
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 0.0);
  SpectralField u = testutil::random_band_limited(g, 8, 2u, 0.5);
  Eigen::MatrixXd J = jacobian(u, p);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(g.size());
  Eigen::VectorXd rs = J * ones;
  for (int j = 0; j < g.size(); ++j) {
    CHECK(rs(j) == doctest::Approx(2.0 * u.value(j)).epsilon(1e-11));
  }
}

TEST_CASE("Jacobian matches finite differences of the residual") {
  PeriodicGrid g = make_grid(32);
  const double eps = 1e-7;
  std::mt19937 rng(424242u);

  auto fd_check = [&](const ProblemSpec& p, const SpectralField& u, unsigned seed) {
    SpectralField v = testutil::random_band_limited(g, 10, seed);
    Eigen::MatrixXd J = jacobian(u, p);
    Eigen::VectorXd vv(g.size());
    for (int j = 0; j < g.size(); ++j) vv(j) = v.value(j);
    Eigen::VectorXd Jv = J * vv;
    SpectralField rp = residual(u + v * eps, p);
    SpectralField rm = residual(u - v * eps, p);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      double fd = (rp.value(j) - rm.value(j)) / (2.0 * eps);
      num = std::max(num, std::abs(fd - Jv(j)));
      den = std::max(den, std::abs(Jv(j)));
    }
    CHECK(num <= 1e-6 * std::max(den, 1.0));
  };

  for (int trial = 0; trial < 5; ++trial) {
    unsigned base = 100u * trial;
    ProblemSpec smooth = quadratic_problem(g, 0.3, 1.0, 0.6);
    fd_check(smooth, testutil::random_band_limited(g, 8, base + 1, 0.2), base + 2);

    ProblemSpec mems = make_mems_problem(0.5, 1.0, 2.5, 2.0,
                                         SpectralField::constant(g, 1.0));
    SpectralField um = testutil::random_band_limited(g, 6, base + 3, 0.0) * 0.1 + 1.0;
    fd_check(mems, um, base + 4);

    ProblemSpec ar = make_ar_problem(0.5, 1.0, 2.0, 1.0, SpectralField::constant(g, 1.0),
                                     SpectralField::constant(g, -0.2),
                                     SpectralField::constant(g, 1.0));
    SpectralField ua = testutil::random_band_limited(g, 6, base + 5, 0.0) * 0.1 + 1.1;
    fd_check(ar, ua, base + 6);
  }
}

TEST_CASE("Newton converges quadratically on the simple root") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 0.25);
  Solution sol = newton_solve(SpectralField::constant(g, 0.4), p);
  CHECK(std::abs(sol.u_mean - 0.5) < 1e-9);
  CHECK(sol.u_max - sol.u_min < 1e-9);
  CHECK(sol.residual_sup <= 1e-10);
  CHECK(sol.iterations <= 12);
}

TEST_CASE("Newton reproduces the closed-form linear solution") {
  for (double s : {0.25, 0.5, 0.75}) {
    PeriodicGrid g = make_grid(64);
    ProblemSpec p = linear_problem(g, 2.0, s);
    Solution sol = newton_solve(SpectralField::zeros(g), p);
    SpectralField expect = sample(g, [](double x) { return 2.0 + std::sin(x); });
    CHECK(testutil::sup_diff(sol.u, expect) <= 1e-10);
  }
}

TEST_CASE("Newton reports failure below the fold") {
  // t = -1 with g(u) = u^2 has no real solution; from u = 0 the Jacobian is
  // the bare (singular) linear symbol, the Tikhonov retry produces a huge
  // step, and the line search stalls.
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, -1.0);
  CHECK_THROWS_AS(newton_solve(SpectralField::zeros(g), p), MaxIterExceeded);
}

TEST_CASE("Newton tracks the two constant states of the singular family") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = make_mems_problem(0.5, 1.0, 2.0, 2.0, SpectralField::constant(g, 1.0));
  Solution low = newton_solve(SpectralField::constant(g, 0.9), p);
  CHECK(std::abs(low.u_mean - 1.0) < 1e-9);
  Solution high = newton_solve(SpectralField::constant(g, 1.5), p);
  CHECK(std::abs(high.u_mean - kGolden) < 1e-9);
  CHECK(high.u_min > 0.0);
}

TEST_CASE("Newton keeps singular iterates above the floor or fails loudly") {
  PeriodicGrid g = make_grid(32);
  // t = -5 forces u + 1/u^2 = -5, impossible for u > 0
  ProblemSpec p = make_mems_problem(0.5, 1.0, -5.0, 2.0, SpectralField::constant(g, 1.0));
  CHECK_THROWS_AS(newton_solve(SpectralField::constant(g, 0.5), p), Error);
}

TEST_CASE("deflation separates the two roots above the fold") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 0.25);
  std::vector<SpectralField> seeds = {SpectralField::constant(g, 1.0),
                                      SpectralField::constant(g, -1.0),
                                      SpectralField::zeros(g)};
  std::vector<Solution> roots = deflated_search(p, seeds);
  REQUIRE(roots.size() == 2);
  double a = roots[0].u_mean, b = roots[1].u_mean;
  if (a < b) std::swap(a, b);
  CHECK(std::abs(a - 0.5) < 1e-8);
  CHECK(std::abs(b + 0.5) < 1e-8);
  for (const auto& r : roots) {
    CHECK(r.u_max - r.u_min < 1e-8);
    CHECK(r.residual_sup <= r.tol);
  }
}

TEST_CASE("deflation collapses the double root to one representative") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 0.0);
  std::vector<SpectralField> seeds = {SpectralField::constant(g, 0.3),
                                      SpectralField::constant(g, -0.3)};
  SolverOptions newton;
  newton.max_iter = 60;
  std::vector<Solution> roots = deflated_search(p, seeds, {newton, 1e-4});
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].u_mean) <= 1e-4);
}

TEST_CASE("deflation over many seeds finds nothing below the fold") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, -0.5);
  std::vector<SpectralField> seeds;
  for (int i = 0; i < 50; ++i) {
    seeds.push_back(SpectralField::constant(g, -3.0 + 6.0 * i / 49.0));
  }
  CHECK(deflated_search(p, seeds).empty());
}

TEST_CASE("sub and supersolution margins have the advertised signs") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 1.0);
  MarginReport sub = check_sub_super(SpectralField::constant(g, -2.0), p, Side::Sub);
  CHECK(sub.min_margin == doctest::Approx(3.0).epsilon(1e-12));
  MarginReport super = check_sub_super(SpectralField::zeros(g), p, Side::Super);
  CHECK(super.min_margin == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sub.margins.size() == static_cast<size_t>(g.size()));
}

TEST_CASE("pair construction requires nodal ordering") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 1.0);
  SpectralField eta = SpectralField::constant(g, -2.0);
  SpectralField cap = SpectralField::zeros(g);
  SubSuperPair pair = make_sub_super_pair(eta, cap, p);
  CHECK(pair.sub_margin == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(pair.super_margin == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(make_sub_super_pair(cap, eta, p), InvalidPair);
}

TEST_CASE("truncated iteration lands between the ordered pair") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 1.0);
  SubSuperPair pair = make_sub_super_pair(SpectralField::constant(g, -2.0),
                                          SpectralField::zeros(g), p);
  Solution sol = truncated_fixed_point(p, pair);
  CHECK(std::abs(sol.u_mean + 1.0) < 1e-9);
  CHECK(sol.residual_sup <= 1e-10);
  CHECK(sol.u_min >= -2.0 - 1e-9);
  CHECK(sol.u_max <= 0.0 + 1e-9);
}

TEST_CASE("truncated iteration solves the singular problem inside its bracket") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = make_mems_problem(0.5, 1.0, 2.5, 2.0, SpectralField::constant(g, 1.0));
  // bracket [sqrt(beta_min/t), (mu beta_max)^{1/(mu+1)}] from the family bounds
  SpectralField eta = SpectralField::constant(g, 0.6324555320336758664);
  SpectralField cap = SpectralField::constant(g, 1.2599210498948731648);
  SubSuperPair pair = make_sub_super_pair(eta, cap, p);
  CHECK(pair.sub_margin >= 0.0);
  CHECK(pair.super_margin >= 0.0);
  Solution sol = truncated_fixed_point(p, pair);
  CHECK(std::abs(sol.u_mean - kMemsLowRoot25) < 1e-9);
  CHECK(sol.u_min >= eta.value(0) - 1e-9);
  CHECK(sol.u_max <= cap.value(0) + 1e-9);
}

TEST_CASE("truncated iteration rejects a misordered pair") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = quadratic_problem(g, 1.0);
  SubSuperPair pair{SpectralField::zeros(g), SpectralField::constant(g, -2.0), 0.0, 0.0};
  CHECK_THROWS_AS(truncated_fixed_point(p, pair), InvalidPair);
}

TEST_CASE("finalize records the diagnostics") {
  PeriodicGrid g = make_grid(32);
  ProblemSpec p = linear_problem(g, 2.0, 0.5);
  SpectralField u = sample(g, [](double x) { return 2.0 + std::sin(x); });
  Solution sol = finalize_solution(u, p, 7, 1e-10);
  CHECK(sol.t == 2.0);
  CHECK(sol.iterations == 7);
  CHECK(sol.u_mean == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(sol.u_min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sol.u_max == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(sol.l2_deriv == doctest::Approx(1.7724538509055160273).epsilon(1e-12));
  CHECK(sol.residual_sup < 1e-12);
}
