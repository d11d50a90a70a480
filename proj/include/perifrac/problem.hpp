#pragma once

#include <functional>
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "perifrac/field.hpp"

namespace perifrac {

// Three problem families, all of the shape  Ds u + c u' + (nonlinear part) = (data):
//
//   Smooth:               Ds u + c u' + g(u) = t + h(x)
//   SingularMems:         Ds u + c u' + u + beta(x)/u^mu = t          (u > 0)
//   AttractiveRepulsive:  Ds u + c u' + e(x) - gamma(x)/u^mu + beta(x)/u^rho = 0   (u > 0)
//
// residual() returns the left side minus the right side nodally.

struct SmoothNonlinearity {
    std::function<double(double)> g;
    std::function<double(double)> dg;
    bool coercive = true; // caller asserts g(z) -> +inf as |z| -> inf
};

struct MemsData {
    double mu;          // >= 1
    SpectralField beta; // min beta > 0
};

struct ArData {
    double mu;           // mu >= rho > 0, mu >= 1
    double rho;
    SpectralField gamma; // mean gamma > 0 for the homotopy to start
    SpectralField beta;
    SpectralField e;     // mean e > 0 for the homotopy to start
};

enum class ProblemKind { Smooth, SingularMems, AttractiveRepulsive };

struct ProblemSpec {
    double s = 0.5;
    double c = 1.0;
    double t = 0.0;  // ignored by AttractiveRepulsive
    SpectralField h; // identically zero for the singular families
    std::variant<SmoothNonlinearity, MemsData, ArData> family;

    ProblemKind kind() const {
        return static_cast<ProblemKind>(family.index());
    }
    const PeriodicGrid& grid() const { return h.grid(); }
    bool positivity_constrained() const { return kind() != ProblemKind::Smooth; }

    const SmoothNonlinearity& smooth() const { return std::get<SmoothNonlinearity>(family); }
    const MemsData& mems() const { return std::get<MemsData>(family); }
    const ArData& ar() const { return std::get<ArData>(family); }

    ProblemSpec with_t(double t_new) const {
        ProblemSpec q = *this;
        q.t = t_new;
        return q;
    }
};

ProblemSpec make_smooth_problem(double s, double c, double t, SpectralField h,
                                SmoothNonlinearity g);
ProblemSpec make_mems_problem(double s, double c, double t, double mu, SpectralField beta);
ProblemSpec make_ar_problem(double s, double c, double mu, double rho, SpectralField gamma,
                            SpectralField beta, SpectralField e);

// Nodal residual of the family equation. Throws PositivityViolated when a
// singular family is evaluated at a field with min u <= 0.
SpectralField residual(const SpectralField& u, const ProblemSpec& p);

// d residual / du as a dense matrix: circulant realization of the spectral
// symbol -|k|^{2s} + i c k plus the diagonal nonlinearity derivative.
Eigen::MatrixXd jacobian(const SpectralField& u, const ProblemSpec& p);

// Diagonal part of the Jacobian (derivative of the nonlinear terms at u).
std::vector<double> nonlinearity_derivative(const SpectralField& u, const ProblemSpec& p);

// Dense nodal realization of the linear symbol -|k|^{2s} + i c k (drift term
// dropped at the Nyquist mode). Circulant; cached per (n, s, c) internally.
Eigen::MatrixXd linear_operator_matrix(const PeriodicGrid& g, double s, double c);

} // namespace perifrac
