#include "perifrac/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fft_internal.hpp"
#include "perifrac/errors.hpp"

namespace perifrac {

SpectralField::SpectralField(PeriodicGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size()) {
    throw InvalidGrid("field has " + std::to_string(values_.size()) +
                      " values on a grid of size " + std::to_string(grid_.size()));
  }
}

SpectralField SpectralField::zeros(const PeriodicGrid& g) {
  return SpectralField(g, std::vector<double>(g.size(), 0.0));
}

SpectralField SpectralField::constant(const PeriodicGrid& g, double value) {
  return SpectralField(g, std::vector<double>(g.size(), value));
}

SpectralField SpectralField::from_coeffs(const PeriodicGrid& g,
                                         const std::vector<std::complex<double>>& coeffs) {
  if (static_cast<int>(coeffs.size()) != g.size()) {
    throw InvalidGrid("coefficient table has " + std::to_string(coeffs.size()) +
                      " slots on a grid of size " + std::to_string(g.size()));
  }
  return SpectralField(g, detail::inverse_values(coeffs));
}

const std::vector<std::complex<double>>& SpectralField::coeffs() const {
  if (!coeffs_ready_) {
    coeffs_ = detail::forward_coeffs(values_);
    coeffs_ready_ = true;
  }
  return coeffs_;
}

std::complex<double> SpectralField::coeff(int k) const {
  const int n = grid_.size();
  if (k < -n / 2 || k > n / 2 - 1) {
    throw InvalidGrid("wavenumber " + std::to_string(k) + " outside [-n/2, n/2-1] for n = " +
                      std::to_string(n));
  }
  return coeffs()[static_cast<size_t>(detail::slot_of_frequency(n, k))];
}

double SpectralField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double SpectralField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

SpectralField sample(const PeriodicGrid& g, const std::function<double(double)>& f) {
  std::vector<double> values(g.size());
  for (int j = 0; j < g.size(); ++j) {
    double v = f(g.node(j));
    if (!std::isfinite(v)) {
      throw SampleError("non-finite sample " + std::to_string(v) + " at node " +
                        std::to_string(g.node(j)));
    }
    values[static_cast<size_t>(j)] = v;
  }
  return SpectralField(g, std::move(values));
}

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw InvalidGrid("operands live on different grids");
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.values());
  for (int j = 0; j < a.size(); ++j) v[static_cast<size_t>(j)] += b.value(j);
  return SpectralField(a.grid(), std::move(v));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.values());
  for (int j = 0; j < a.size(); ++j) v[static_cast<size_t>(j)] -= b.value(j);
  return SpectralField(a.grid(), std::move(v));
}

SpectralField operator*(double a, const SpectralField& b) {
  std::vector<double> v(b.values());
  for (auto& x : v) x *= a;
  return SpectralField(b.grid(), std::move(v));
}

SpectralField operator*(const SpectralField& a, double b) { return b * a; }

SpectralField operator+(const SpectralField& a, double b) {
  std::vector<double> v(a.values());
  for (auto& x : v) x += b;
  return SpectralField(a.grid(), std::move(v));
}

SpectralField operator-(const SpectralField& a, double b) { return a + (-b); }

}  // namespace perifrac
