#pragma once

#include <optional>
#include <vector>

#include "perifrac/problem.hpp"

namespace perifrac {

struct SolverOptions {
    double tol = 1e-10;       // residual sup-norm target
    int max_iter = 50;
    double min_u_floor = 1e-8; // accepted iterates of singular families stay above this
};

struct Solution {
    SpectralField u;
    double t = 0;
    double residual_sup = 0;
    int iterations = 0;
    double tol = 0;
    // diagnostics
    double u_mean = 0, u_min = 0, u_max = 0, l2_deriv = 0;
};

Solution finalize_solution(const SpectralField& u, const ProblemSpec& p, int iterations,
                           double tol);

// Damped Newton iteration on the family residual: full step, then halving
// (factor 1/2, at most 30 times) until the residual sup-norm decreases; for
// singular families trial points below min_u_floor are rejected inside the
// line search. Errors: MaxIterExceeded (iteration budget or stalled line
// search), SingularJacobian (factorization produced non-finite corrections
// even after Tikhonov retries), PositivityViolated (no step length keeps the
// iterate above the floor).
Solution newton_solve(const SpectralField& u0, const ProblemSpec& p,
                      const SolverOptions& opts = {});

struct DeflationOptions {
    SolverOptions newton;
    double radius = 1e-4; // sup-norm separation below which two roots count as one
};

// Deflated continuation of newton_solve over a seed list: each found root
// u* multiplies the residual by (1/||u - u*||^2 + 1) (L2 norm) for the
// remaining seeds. Failed seeds are skipped; results are distinct beyond
// `radius` in sup norm and all satisfy the plain residual tolerance.
std::vector<Solution> deflated_search(const ProblemSpec& p,
                                      const std::vector<SpectralField>& seeds,
                                      const DeflationOptions& opts = {});

struct SubSuperPair {
    SpectralField subsolution;   // eta
    SpectralField supersolution; // beta
    double sub_margin = 0;       // min_j residual(eta)_j   (>= 0 for a true subsolution)
    double super_margin = 0;     // min_j -residual(beta)_j (>= 0 for a true supersolution)
};

enum class Side { Sub, Super };

struct MarginReport {
    std::vector<double> margins;
    double min_margin = 0;
};

// Signed nodal margins: Side::Sub reports residual(candidate) (a subsolution
// has residual >= 0 everywhere), Side::Super reports -residual(candidate).
MarginReport check_sub_super(const SpectralField& candidate, const ProblemSpec& p, Side side);

// Orders the pair and records both margins. InvalidPair if eta > beta at a node.
SubSuperPair make_sub_super_pair(const SpectralField& eta, const SpectralField& beta,
                                 const ProblemSpec& p);

// Truncated fixed-point iteration between an ordered sub/supersolution pair:
//   u_{k+1} = resolvent_solve(F(u_k), s, c, sigma = 1),
//   F(u) = -clamp(u) + t + h - g_family(x, clamp(u)),  clamp into [eta, beta].
// Falls back to Newton on the truncated residual when the Picard sweep
// stagnates. The returned iterate lies in [eta - tol, beta + tol] nodally and
// satisfies the UNtruncated equation to tol (NoConvergence otherwise).
Solution truncated_fixed_point(const ProblemSpec& p, const SubSuperPair& pair,
                               const SolverOptions& opts = {});

} // namespace perifrac
