#include "fft_internal.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace perifrac::detail {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW planning is not thread safe and plans are expensive relative to the
// small transforms used here, so one plan pair per size is cached for the
// lifetime of the process. FFTW_UNALIGNED lets the cached plan execute on
// whatever buffers the caller supplies.
PlanPair plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.forward = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

}  // namespace

std::vector<std::complex<double>> forward_coeffs(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<std::complex<double>> in(n), out(n);
  for (int j = 0; j < n; ++j) in[j] = values[j];
  PlanPair p = plans_for(n);
  fftw_execute_dft(p.forward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / n;
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> inverse_values(const std::vector<std::complex<double>>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  std::vector<std::complex<double>> in(coeffs), out(n);
  PlanPair p = plans_for(n);
  fftw_execute_dft(p.backward, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> values(n);
  for (int j = 0; j < n; ++j) values[j] = out[j].real();
  return values;
}

}  // namespace perifrac::detail
