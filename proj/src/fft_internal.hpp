#pragma once

#include <complex>
#include <vector>

namespace perifrac::detail {

// Forward transform with the 1/n normalization baked in: slot m of the result
// holds the coefficient of frequency k = m for m < n/2 and k = m - n otherwise.
std::vector<std::complex<double>> forward_coeffs(const std::vector<double>& values);

// Inverse transform; the imaginary part of the synthesized signal is dropped.
std::vector<double> inverse_values(const std::vector<std::complex<double>>& coeffs);

inline int frequency_of_slot(int n, int m) { return (m < n / 2) ? m : m - n; }

inline int slot_of_frequency(int n, int k) { return (k >= 0) ? k : k + n; }

}  // namespace perifrac::detail
