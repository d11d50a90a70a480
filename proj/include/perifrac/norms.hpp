#pragma once

#include "perifrac/field.hpp"

namespace perifrac {

struct FieldNorms {
    double sup;      // max_j |u_j|
    double l2;       // sqrt(2pi * sum_k |c_k|^2)   (Parseval, exact for trig polys)
    double l2_deriv; // sqrt(2pi * sum_k k^2 |c_k|^2)
};

// Nodal mean; equals the k = 0 coefficient up to roundoff.
double mean(const SpectralField& u);

FieldNorms norms(const SpectralField& u);

// sqrt(2pi * sum_k |k|^{2s} |c_k|^2), 0 < s < 1 (InvalidOrder otherwise).
double hs_seminorm(const SpectralField& u, double s);

// max over node pairs of |u_i - u_j| / d(x_i, x_j)^alpha with the periodic
// distance d = min(|x_i - x_j|, 2pi - |x_i - x_j|). Diagnostic only; O(n^2).
double holder_quotient(const SpectralField& u, double alpha);

// Trapezoid inner product (2pi/n) sum_j a_j b_j; exact for resolved products.
double inner_l2(const SpectralField& a, const SpectralField& b);

} // namespace perifrac
