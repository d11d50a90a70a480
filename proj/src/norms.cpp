#include "perifrac/norms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft_internal.hpp"
#include "perifrac/errors.hpp"

namespace perifrac {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double mean(const SpectralField& u) {
  double acc = 0.0;
  for (double v : u.values()) acc += v;
  return acc / u.size();
}

FieldNorms norms(const SpectralField& u) {
  const int n = u.size();
  const auto& c = u.coeffs();
  double sup = 0.0;
  for (double v : u.values()) sup = std::max(sup, std::abs(v));
  double sum2 = 0.0, sumd = 0.0;
  for (int m = 0; m < n; ++m) {
    const double k = detail::frequency_of_slot(n, m);
    const double a = std::norm(c[static_cast<size_t>(m)]);
    sum2 += a;
    sumd += k * k * a;
  }
  return FieldNorms{sup, std::sqrt(kTwoPi * sum2), std::sqrt(kTwoPi * sumd)};
}

double hs_seminorm(const SpectralField& u, double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidOrder("fractional order must lie in (0,1), got " + std::to_string(s));
  }
  const int n = u.size();
  const auto& c = u.coeffs();
  double acc = 0.0;
  for (int m = 0; m < n; ++m) {
    const int k = detail::frequency_of_slot(n, m);
    if (k == 0) continue;
    acc += std::pow(std::abs(static_cast<double>(k)), 2.0 * s) * std::norm(c[static_cast<size_t>(m)]);
  }
  return std::sqrt(kTwoPi * acc);
}

double holder_quotient(const SpectralField& u, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidOrder("Holder exponent must lie in (0,1], got " + std::to_string(alpha));
  }
  const int n = u.size();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs(u.grid().node(i) - u.grid().node(j));
      d = std::min(d, kTwoPi - d);
      best = std::max(best, std::abs(u.value(i) - u.value(j)) / std::pow(d, alpha));
    }
  }
  return best;
}

double inner_l2(const SpectralField& a, const SpectralField& b) {
  if (a.grid() != b.grid()) throw InvalidGrid("operands live on different grids");
  double acc = 0.0;
  for (int j = 0; j < a.size(); ++j) acc += a.value(j) * b.value(j);
  return acc * a.grid().spacing();
}

}  // namespace perifrac
