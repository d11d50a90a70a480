#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fft_internal.hpp"
#include "perifrac/errors.hpp"
#include "perifrac/fractional.hpp"

namespace perifrac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussPoints = 10;
constexpr double kGaussX[kGaussPoints] = {
    -0.97390652851717172008, -0.86506336668898451073, -0.67940956829902440623,
    -0.43339539412924719080, -0.14887433898163121088, 0.14887433898163121088,
    0.43339539412924719080,  0.67940956829902440623,  0.86506336668898451073,
    0.97390652851717172008};
constexpr double kGaussW[kGaussPoints] = {
    0.066671344308688137594, 0.14945134915058059315, 0.21908636251598204400,
    0.26926671930999635509,  0.29552422471475287017, 0.29552422471475287017,
    0.26926671930999635509,  0.21908636251598204400, 0.14945134915058059315,
    0.066671344308688137594};

// Head terms summed directly before switching to the Euler-Maclaurin
// remainder; large enough that two correction terms reach ~1e-15 relative.
constexpr int kDirectImages = 64;

// Periodized kernel sum_{m=0..M} (w + 2pi m)^{-(1+2s)}. M is a power of two
// stored as a double and can exceed any integer type, hence the closed-form
// remainder: integral plus trapezoid end correction plus two Bernoulli terms.
double periodized_kernel(double w, double image_count, double s) {
  const double p = 1.0 + 2.0 * s;
  if (image_count <= kDirectImages) {
    double acc = 0.0;
    for (int m = 0; m <= static_cast<int>(image_count); ++m) {
      acc += std::pow(w + kTwoPi * m, -p);
    }
    return acc;
  }
  double acc = 0.0;
  for (int m = 0; m < kDirectImages; ++m) acc += std::pow(w + kTwoPi * m, -p);
  const double h = kDirectImages;
  const double M = image_count;
  auto f = [&](double m) { return std::pow(w + kTwoPi * m, -p); };
  auto fp = [&](double m) { return -p * kTwoPi * std::pow(w + kTwoPi * m, -p - 1.0); };
  auto fppp = [&](double m) {
    return -p * (p + 1.0) * (p + 2.0) * kTwoPi * kTwoPi * kTwoPi *
           std::pow(w + kTwoPi * m, -p - 3.0);
  };
  const double integral =
      (std::pow(w + kTwoPi * h, 1.0 - p) - std::pow(w + kTwoPi * M, 1.0 - p)) /
      ((p - 1.0) * kTwoPi);
  acc += integral + 0.5 * (f(h) + f(M)) + (fp(M) - fp(h)) / 12.0 - (fppp(M) - fppp(h)) / 720.0;
  return acc;
}

}  // namespace

PVKernel build_pv_kernel(double s, const PeriodicGrid& g, double target_tol) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidOrder("fractional order must lie in (0,1), got " + std::to_string(s));
  }
  if (!(target_tol > 0.0)) {
    throw ToleranceUnreachable("kernel tail bound cannot reach " + std::to_string(target_tol));
  }

  // truncation: double the image count until the analytic tail bound clears
  // an eighth of the target, leaving the rest of the budget to quadrature
  const double p = 1.0 + 2.0 * s;
  double image_count = 1.0;
  while (std::pow(kTwoPi, -p) * std::pow(image_count + 0.5, -2.0 * s) / s > target_tol / 8.0) {
    image_count *= 2.0;
    if (image_count > std::exp2(300.0)) {
      throw ToleranceUnreachable("image count exceeded 2^300 for tolerance " +
                                 std::to_string(target_tol));
    }
  }

  // graded mesh w_q = 2pi (q/Q)^gamma; Q keeps the widest cell short enough
  // that the highest resolved oscillation is quadratured accurately
  const double gamma = std::max(2.0, 2.0 / (1.0 - s));
  const int q_tol = static_cast<int>(std::ceil(24.0 * std::max(1.0, -std::log10(target_tol))));
  const int q_geo = static_cast<int>(std::ceil(std::numbers::pi * gamma * g.size() / 1.2));
  const int q_cells = std::max({64, q_tol, q_geo});

  std::vector<double> edges(static_cast<size_t>(q_cells) + 1);
  for (int q = 0; q <= q_cells; ++q) {
    edges[static_cast<size_t>(q)] = kTwoPi * std::pow(static_cast<double>(q) / q_cells, gamma);
  }

  PVKernel ker;
  ker.s = s;
  ker.c1s = c1s_constant(s);
  ker.target_tol = target_tol;
  ker.image_count = image_count;
  ker.n = g.size();

  // cells with a large endpoint ratio are split geometrically so that each
  // piece sees a bounded relative variation of the kernel
  constexpr double kMaxRatio = 1.4;
  const double log_ratio = std::log(kMaxRatio);
  std::vector<double> sub;
  for (int q = 0; q < q_cells; ++q) {
    const double a = edges[static_cast<size_t>(q)];
    const double b = edges[static_cast<size_t>(q) + 1];
    sub.clear();
    if (a > 0.0 && b / a > kMaxRatio) {
      const int pieces = static_cast<int>(std::ceil(std::log(b / a) / log_ratio));
      for (int i = 0; i <= pieces; ++i) {
        sub.push_back(a * std::pow(b / a, static_cast<double>(i) / pieces));
      }
    } else {
      sub.push_back(a);
      sub.push_back(b);
    }
    for (size_t i = 0; i + 1 < sub.size(); ++i) {
      const double mid = 0.5 * (sub[i] + sub[i + 1]);
      const double half = 0.5 * (sub[i + 1] - sub[i]);
      for (int gq = 0; gq < kGaussPoints; ++gq) {
        const double node = mid + half * kGaussX[gq];
        const double kval = periodized_kernel(node, image_count, s);
        ker.nodes.push_back(node);
        ker.kernel_values.push_back(kval);
        ker.weights.push_back(half * kGaussW[gq] * kval);
      }
    }
  }
  return ker;
}

SpectralField pv_apply(const SpectralField& u, const PVKernel& kernel) {
  const int n = u.size();
  if (kernel.n != n) {
    throw PreconditionViolation("kernel table built for n = " + std::to_string(kernel.n) +
                                " applied on a grid of size " + std::to_string(n));
  }
  const auto& c = u.coeffs();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  std::vector<std::complex<double>> shifted(static_cast<size_t>(n));
  // For each quadrature offset w, u(x+w) + u(x-w) - 2u(x) is synthesized from
  // the interpolant as sum_k c_k e^{ikx} (-4 sin^2(kw/2)); the sine form
  // avoids the catastrophic cancellation of 2cos(kw) - 2 near kw = 0.
  for (size_t q = 0; q < kernel.nodes.size(); ++q) {
    const double w = kernel.nodes[q];
    const double wt = kernel.weights[q];
    for (int m = 0; m < n; ++m) {
      const double k = detail::frequency_of_slot(n, m);
      const double sh = std::sin(0.5 * k * w);
      shifted[static_cast<size_t>(m)] = c[static_cast<size_t>(m)] * (-4.0 * sh * sh);
    }
    std::vector<double> diff = detail::inverse_values(shifted);
    for (int j = 0; j < n; ++j) out[static_cast<size_t>(j)] += wt * diff[static_cast<size_t>(j)];
  }
  for (double& v : out) v *= kernel.c1s;
  return SpectralField(u.grid(), std::move(out));
}

}  // namespace perifrac
