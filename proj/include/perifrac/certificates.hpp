#pragma once

#include <map>
#include <optional>
#include <string>

#include "perifrac/solver.hpp"

namespace perifrac {

struct BoundCheck {
    bool pass = false;
    double slack = 0; // how far inside the bound the quantity sits (negative = violated)
};

struct CertificateReport {
    // smooth family
    std::optional<double> theta;      // min over x, z of g(z) - h(x)
    std::optional<double> t_star;     // max over x of g(0) - h(x)
    std::optional<double> coercive_R; // minimal R with g > t2 + max h outside [-R, R]
    std::optional<double> sup_M;      // coercive_R + sqrt(2pi) ||h||_L2 / c
    // singular family
    std::optional<double> r_t;        // (min beta / t)^(1/mu)
    // attractive-repulsive family
    std::optional<double> A0, A1, M1, M2, r0, R0, a_start;
    bool degenerate_bracket = false;  // M1 == M2 collapsed to a single root
    std::string lim_trend;            // sampled x -> 0+ trend classification
    // numerics
    std::optional<double> t1_numeric; // located fold parameter, when traced
    std::map<std::string, double> identities;
    std::map<std::string, BoundCheck> bounds;
};

// theta = min_z g(z) - max_x h(x). The z-window doubles from z_window until
// the boundary values exceed the interior minimum by 1 (coercivity witness),
// then the minimizer is refined by golden section to 1e-10.
// WindowGrowthExceeded when the window outgrows 2^40 * z_window.
double theta_smooth(const ProblemSpec& p, double z_window = 1.0);

// t_star = g(0) - min_x h(x).
double t_star_smooth(const ProblemSpec& p);

// Minimal R >= 0 with min_{|z| >= R} g(z) > t2 + max h, found by doubling
// then bisection; returned value overshoots by at most 1e-6.
double coercive_radius(const ProblemSpec& p, double t2);

// Sup-norm a-priori bound  M = coercive_radius(p, t2) + sqrt(2pi) ||h||_L2 / c.
// DriftRequired when c = 0.
double sup_bound_M(const ProblemSpec& p, double t2);

struct SingularConstants {
    double theta = 0;  // (mu * min beta)^(1/(mu+1))
    double t_star = 0; // (mu+1) * (max beta / mu^mu)^(1/(mu+1))
    std::optional<double> r_t;
};

// InvalidBeta when min beta <= 0; r_t supplied only for t > 0.
SingularConstants singular_constants(double mu, const SpectralField& beta,
                                     std::optional<double> t = std::nullopt);

struct ArConstants {
    double A0 = 0, A1 = 0;
    double M1 = 0, M2 = 0; // outer roots of phi(x) = mean(gamma)/x^mu - mean(beta)/x^rho - mean(e)
    double r0 = 0, R0 = 0; // min{M1, r_run}, max{M2, R_run}
    bool degenerate_bracket = false;
};

// r_run / R_run are optional empirical localization bounds folded into r0/R0.
// RootBracketFailed when phi has no sign change on the log-spaced scan.
ArConstants ar_constants(const ProblemSpec& ar, std::optional<double> r_run = std::nullopt,
                         std::optional<double> R_run = std::nullopt);

enum class LimTrend { MinusInfinity, Finite, PlusInfinity };

struct LimProbe {
    std::vector<std::pair<double, double>> samples; // (x, c x / 2 - 2pi mean(gamma_-)/x^mu - 2pi mean(beta_+)/x^rho)
    LimTrend trend = LimTrend::Finite;
};

// Samples the x -> 0+ behaviour of the probe function on a log grid over
// [1e-8, 1e2] and classifies the trend. Reporting only; nothing branches on it.
LimProbe lim_condition_probe(const ProblemSpec& ar);

// Residuals of the identities every converged solution must satisfy:
//   mean_value   |mean(nonlinear part) - mean(data)|            (families with t)
//   drift_energy |c ||u'||^2 - <D(x,u), u'>|, the pairing D from the family's
//                own derivation (Smooth: h, SingularMems: -beta/u^mu,
//                AttractiveRepulsive: N(u)); emitted for c > 0
//   frac_mean    |mean(Ds u)|           (exact discrete identity)
//   frac_orth    |<Ds u, u'>|           (exact discrete identity)
//   hs_slack     max(0, [v]_{H^s}^2 - 2pi (t - theta) sup|v|), v = u - mean(u)
//                (driftless Smooth only)
std::map<std::string, double> verify_identities(const Solution& sol, const ProblemSpec& p);

// A-priori bound checks against a certificate report. MissingCertificate when
// a bound the family needs is absent from the report.
//   Smooth (c > 0):        sup |u| < sup_M
//   SingularMems:          min u > r_t   and   ||u'||_L2 <= (||beta||_L2 + t sqrt(2pi)) / c
//   AttractiveRepulsive:   min u <= A0   and   max u >= A1
std::map<std::string, BoundCheck> verify_bounds(const Solution& sol,
                                                const CertificateReport& report,
                                                const ProblemSpec& p);

} // namespace perifrac
