// Independent reference implementations used only by the tests. They follow
// the textbook definitions directly and share no code with the library
// beyond the plain parameter structs.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline cplx simpson_c(const std::function<cplx(double)>& f, double a, double b, int n = 4000) {
  const double h = (b - a) / n;
  cplx s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Free Schroedinger evolution of the t = 0 packet
///   psi0(x) = pi^(-1/4) sqrt(sigma) exp(-sigma^2 x^2 / 2 + i k0 x)
/// computed as a momentum-space integral.
inline cplx free_packet(double k0, double sigma, double hbar_over_m, double x, double t) {
  const double norm = std::pow(pi, -0.25) * std::sqrt(sigma) * std::sqrt(2 * pi) / sigma / (2 * pi);
  auto integrand = [&](double k) {
    const double envelope = std::exp(-(k - k0) * (k - k0) / (2 * sigma * sigma));
    return envelope * std::polar(1.0, k * x - 0.5 * hbar_over_m * k * k * t);
  };
  return norm * simpson_c(integrand, k0 - 12 * sigma, k0 + 12 * sigma, 6000);
}

/// |a(x) b(y) + sign b(x) a(y)|^2 / 2.
inline double pair_probability(cplx ax, cplx ay, cplx bx, cplx by, double sign) {
  return 0.5 * std::norm(ax * by + sign * bx * ay);
}

/// Plane-wave grating field, summed term by term.
inline cplx grating_field(const std::map<int, cplx>& a, double d, double k, double L, double x) {
  const double lambda = 2 * pi / k;
  cplx psi = 0.0;
  for (const auto& [n, an] : a)
    psi += an * std::exp(cplx(0, 2 * pi * n * x / d - pi * n * n * L * lambda / (d * d)));
  return std::exp(cplx(0, k * L)) * psi;
}

/// Period average of P(x, x + eta). P is a trigonometric polynomial in x of
/// degree below `samples`, so the uniform mean is exact.
inline double correlation(const std::map<int, cplx>& a, double d, double k, double p, double L,
                          double sign, double eta, int samples = 256) {
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = d * i / samples, y = x + eta;
    const cplx ax = grating_field(a, d, k, L, x), ay = grating_field(a, d, k, L, y);
    const cplx bx = grating_field(a, d, p, L, x), by = grating_field(a, d, p, L, y);
    sum += sign == 0.0 ? 0.5 * (std::norm(ax * by) + std::norm(bx * ay))
                       : pair_probability(ax, ay, bx, by, sign);
  }
  return sum / samples;
}

inline std::map<int, cplx> random_coefficients(std::mt19937_64& rng, int n_max) {
  std::uniform_real_distribution<double> mag(0.1, 1.0), ph(-pi, pi);
  std::map<int, cplx> a;
  double total = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    a[n] = std::polar(mag(rng), ph(rng));
    total += std::norm(a[n]);
  }
  for (auto& [n, v] : a) v /= std::sqrt(total);
  return a;
}

// Frozen high-precision values (30-digit arithmetic) at k0 = 1 = -p0,
// sigma^2 = 0.125, hbar t / m = 0.1, x = v_k t, y = v_p t, reduced units.
inline constexpr double ref_boson = 1.911517800942696;
inline constexpr double ref_fermion = 0.078533579518871801;
inline constexpr double ref_noexchange = 0.99502569023078392;
inline constexpr double ref_mu = 2.0003125;
inline constexpr double ref_c4 = 0.03978251975426223;

}  // namespace oracle
