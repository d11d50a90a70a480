#include "perifrac/fractional.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fft_internal.hpp"
#include "perifrac/errors.hpp"

namespace perifrac {

namespace {

void require_order(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidOrder("fractional order must lie in (0,1), got " + std::to_string(s));
  }
}

}  // namespace

FractionalSymbol FractionalSymbol::make(double s, int n) {
  require_order(s);
  FractionalSymbol sym;
  sym.s = s;
  sym.multipliers.resize(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    const int k = detail::frequency_of_slot(n, m);
    sym.multipliers[static_cast<size_t>(m)] =
        (k == 0) ? 0.0 : -std::pow(std::abs(static_cast<double>(k)), 2.0 * s);
  }
  return sym;
}

SpectralField apply_fractional(const SpectralField& u, double s) {
  const int n = u.size();
  FractionalSymbol sym = FractionalSymbol::make(s, n);
  std::vector<std::complex<double>> c = u.coeffs();
  for (int m = 0; m < n; ++m) c[static_cast<size_t>(m)] *= sym.multipliers[static_cast<size_t>(m)];
  return SpectralField::from_coeffs(u.grid(), c);
}

SpectralField apply_derivative(const SpectralField& u) {
  const int n = u.size();
  std::vector<std::complex<double>> c = u.coeffs();
  for (int m = 0; m < n; ++m) {
    const int k = detail::frequency_of_slot(n, m);
    // the Nyquist mode has no conjugate partner; ik would break realness
    if (k == -n / 2) {
      c[static_cast<size_t>(m)] = 0.0;
    } else {
      c[static_cast<size_t>(m)] *= std::complex<double>(0.0, static_cast<double>(k));
    }
  }
  return SpectralField::from_coeffs(u.grid(), c);
}

double c1s_constant(double s) {
  require_order(s);
  return s * std::pow(4.0, s) * std::tgamma(s + 0.5) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - s));
}

SpectralField resolvent_solve(const SpectralField& f, double s, double c, double sigma) {
  require_order(s);
  if (!(sigma > 0.0)) {
    throw InvalidShift("resolvent shift must be positive, got " + std::to_string(sigma));
  }
  const int n = f.size();
  FractionalSymbol sym = FractionalSymbol::make(s, n);
  std::vector<std::complex<double>> coeffs = f.coeffs();
  for (int m = 0; m < n; ++m) {
    const int k = detail::frequency_of_slot(n, m);
    const double drift = (k == -n / 2) ? 0.0 : c * k;
    const std::complex<double> denom(sym.multipliers[static_cast<size_t>(m)] - sigma, drift);
    coeffs[static_cast<size_t>(m)] /= denom;
  }
  return SpectralField::from_coeffs(f.grid(), coeffs);
}

}  // namespace perifrac
