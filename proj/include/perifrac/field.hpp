#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "perifrac/grid.hpp"

namespace perifrac {

// Real 2pi-periodic grid function together with a lazily computed table of
// Fourier coefficients. Values are immutable after construction; the
// coefficient cache is filled once on first access and is consistent with the
// values from then on (fill it before handing the field to other threads).
//
// Coefficient layout is the usual FFT one: slot m holds wavenumber k = m for
// m < n/2 and k = m - n otherwise, i.e. k runs over -n/2 .. n/2-1. For real
// values coeff(-k) == conj(coeff(k)); the Nyquist slot k = -n/2 has no partner
// and is real up to roundoff.
class SpectralField {
  public:
    SpectralField(PeriodicGrid grid, std::vector<double> values);

    static SpectralField zeros(const PeriodicGrid& g);
    static SpectralField constant(const PeriodicGrid& g, double value);
    // coeffs given in the layout above; imaginary leftovers of the inverse
    // transform are discarded (callers must pass Hermitian data).
    static SpectralField from_coeffs(const PeriodicGrid& g,
                                     const std::vector<std::complex<double>>& coeffs);

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }

    const std::vector<double>& values() const { return values_; }
    double value(int j) const { return values_[static_cast<size_t>(j)]; }

    // Full coefficient table (layout above), computed on first use.
    const std::vector<std::complex<double>>& coeffs() const;
    // Single coefficient, k in [-n/2, n/2-1].
    std::complex<double> coeff(int k) const;

    double min_value() const;
    double max_value() const;

  private:
    PeriodicGrid grid_;
    std::vector<double> values_;
    mutable std::vector<std::complex<double>> coeffs_;
    mutable bool coeffs_ready_ = false;
};

// Evaluates f at every node. Non-finite samples raise SampleError.
SpectralField sample(const PeriodicGrid& g, const std::function<double(double)>& f);

// Nodal arithmetic; operands must share a grid.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double a, const SpectralField& b);
SpectralField operator*(const SpectralField& a, double b);
SpectralField operator+(const SpectralField& a, double b);
SpectralField operator-(const SpectralField& a, double b);

} // namespace perifrac
