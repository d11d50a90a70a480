#pragma once

#include "perifrac/field.hpp"

namespace perifrac {

// Sign convention: the periodic fractional Laplacian used throughout acts in
// Fourier space as multiplication by m_k = -|k|^{2s}, so the zero mode is
// annihilated and the operator is negative semidefinite. s is restricted to
// (0, 1).

struct FractionalSymbol {
    double s;
    std::vector<double> multipliers; // FFT layout, multipliers[0] == 0

    static FractionalSymbol make(double s, int n);
};

// Applies the multiplier -|k|^{2s}. Output is real (even symbol).
SpectralField apply_fractional(const SpectralField& u, double s);

// Spectral derivative ik; the unpaired Nyquist mode k = -n/2 is zeroed
// because the odd symbol would otherwise produce a complex node value.
SpectralField apply_derivative(const SpectralField& u);

// Normalizing constant of the 1-d singular-integral form,
//   c(s) = s * 4^s * Gamma(s + 1/2) / (sqrt(pi) * Gamma(1 - s)),
// with c(1/2) = 1/pi.
double c1s_constant(double s);

// Quadrature table for the principal-value route. The kernel is the
// 2pi-periodization K(w) = sum_{m=0..M} (w + 2pi m)^{-(1+2s)} truncated after
// M images, with the analytic tail bound (2pi)^{-(1+2s)} (M+1/2)^{-2s} / s
// pushed below target_tol by doubling M. Nodes live on the graded mesh
// w_q = 2pi (q/Q)^gamma, gamma = max(2, 2/(1-s)); each graded cell is
// integrated by 10-point Gauss-Legendre after bounded-ratio geometric
// subdivision. image_count is a power of two held as a double: the tail
// bound decays like M^{-2s}, so small s needs counts beyond any integer type.
struct PVKernel {
    double s = 0;
    double c1s = 0;
    double target_tol = 0;
    double image_count = 0;
    int n = 0;                         // grid resolution the table was built for
    std::vector<double> nodes;         // quadrature abscissae in (0, 2pi)
    std::vector<double> kernel_values; // K at the nodes; positive, decreasing
    std::vector<double> weights;       // quadrature weight * kernel value
};

PVKernel build_pv_kernel(double s, const PeriodicGrid& g, double target_tol);

// Independent oracle for apply_fractional: at every node x evaluates
//   c1s * integral_(0,2pi] (u(x+w) + u(x-w) - 2 u(x)) K(w) dw
// through the kernel table, with the symmetric second difference evaluated
// from the trigonometric interpolant in the cancellation-free form
// sum_k c_k e^{ikx} (-4 sin^2(k w / 2)). Shares no spectral-multiplier code
// with apply_fractional.
SpectralField pv_apply(const SpectralField& u, const PVKernel& kernel);

// Solves (Ds + c d/dx - sigma) u = f in Fourier space, Ds the fractional
// operator above. sigma must be positive (the k = 0 symbol vanishes
// otherwise; InvalidShift). At the unpaired Nyquist mode the drift term is
// dropped, matching apply_derivative.
SpectralField resolvent_solve(const SpectralField& f, double s, double c, double sigma);

} // namespace perifrac
