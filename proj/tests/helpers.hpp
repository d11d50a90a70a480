#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "perifrac/field.hpp"
#include "perifrac/grid.hpp"

namespace testutil {

// Random real trigonometric polynomial of degree <= deg with coefficients
// drawn from U(-1,1). Deterministic for a given seed.
inline perifrac::SpectralField random_band_limited(const perifrac::PeriodicGrid& grid,
                                                   int deg, unsigned seed,
                                                   double mean = 0.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> a(deg + 1), b(deg + 1);
  for (int k = 1; k <= deg; ++k) {
    a[k] = coef(rng);
    b[k] = coef(rng);
  }
  std::vector<double> vals(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    double x = grid.node(j);
    double v = mean;
    for (int k = 1; k <= deg; ++k) v += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
    vals[j] = v;
  }
  return perifrac::SpectralField(grid, std::move(vals));
}

inline double sup_diff(const perifrac::SpectralField& u, const perifrac::SpectralField& v) {
  double m = 0.0;
  for (int j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u.value(j) - v.value(j)));
  return m;
}

inline double sup_abs(const perifrac::SpectralField& u) {
  double m = 0.0;
  for (int j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u.value(j)));
  return m;
}

}  // namespace testutil
