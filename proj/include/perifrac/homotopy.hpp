#pragma once

#include "perifrac/solver.hpp"

namespace perifrac {

// Scalar equilibrium of the attractive-repulsive family: the root of
//   phi(a) = mean(gamma)/a^mu - mean(beta)/a^rho - mean(e)
// bracketed on a log-spaced scan of [1e-8, 1e8] and bisected until
// |phi(a)| <= 1e-12. Preconditions mean(gamma) > 0 and mean(e) > 0
// (PreconditionViolation); NoBracket when phi never changes sign.
double scalar_equilibrium(const ProblemSpec& ar);

struct HomotopyState {
    double lambda = 0;
    SpectralField u;
};

struct HomotopyResult {
    Solution final;                  // lambda = 1 solution of the full equation
    double a_start = 0;              // scalar equilibrium used at lambda = 0
    std::vector<HomotopyState> path; // accepted (lambda, u) states, lambda increasing
};

// Mean-projection homotopy for the attractive-repulsive family:
//   Ds u + c u' = (1 - lambda) * mean(N(u)) + lambda * N(u),
//   N(u) = gamma/u^mu - beta/u^rho - e,
// from the exact constant solution u = a_start at lambda = 0 to the full
// equation at lambda = 1. lambda advances on a uniform grid of lambda_steps
// steps with halving on Newton failure; HomotopyStall when the step drops
// below 1e-4.
HomotopyResult mawhin_homotopy(const ProblemSpec& ar, int lambda_steps = 20,
                               const SolverOptions& opts = {});

} // namespace perifrac
