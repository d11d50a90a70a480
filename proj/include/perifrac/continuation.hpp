#pragma once

#include "perifrac/solver.hpp"

namespace perifrac {

// Normalized branch tangent in the bordered metric
// ||(du, dt)||^2 = (2pi/n) sum du_j^2 + dt^2.
struct Tangent {
    std::vector<double> du;
    double dt = 0;
};

enum class BranchStop {
    ReachedTarget, // natural: t_to reached; arclength: max_steps taken
    FoldSuspected, // natural continuation only: step collapsed to dt_min
};

struct Branch {
    ProblemSpec problem;            // problem at the seed's t; points carry their own t
    std::vector<Solution> points;   // ordered along the sweep / by arclength
    std::vector<Tangent> tangents;  // arclength only; aligned with points
    std::vector<int> folds;         // i such that tangents[i].dt and tangents[i+1].dt flip sign
    BranchStop stop = BranchStop::ReachedTarget;
};

// Parameter sweep with Newton warm starts. Steps dt toward t_to, halving on
// failure down to dt/1024; a collapse marks the branch FoldSuspected and
// returns the partial branch. SeedFailed if the very first solve fails.
Branch continue_natural(const ProblemSpec& p, double t_from, double t_to, double dt,
                        const SpectralField& seed, const SolverOptions& opts = {});

// Pseudo-arclength continuation from a converged start point. Extended system
//   residual(u, t) = 0,
//   <du_pred, u - u_prev> + dt_pred (t - t_prev) - ds = 0
// solved by bordered Newton; tangents oriented by continuity (first one by
// prefer_dt_sign when it has a t-component). Steps adapt within
// [ds/4, 2 ds]; StepCollapse below 1e-8. Folds are recorded at tangent
// dt sign flips.
Branch continue_arclength(const ProblemSpec& p, const Solution& start, double ds,
                          int max_steps, const SolverOptions& opts = {},
                          int prefer_dt_sign = -1);

struct FoldPoint {
    double t1 = 0;
    SpectralField u;
    int bracket_index = 0; // left index of the tangent sign flip in the branch
};

// Refines the first recorded fold of an arclength branch by a secant /
// bisection hybrid on the tangent t-component until |dt| <= 1e-8.
// NoFoldInBranch when the branch has no sign flip.
FoldPoint locate_fold(const Branch& branch, const SolverOptions& opts = {});

} // namespace perifrac
