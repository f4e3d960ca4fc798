#include "pairwave/correlation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pairwave/parallel.hpp"
#include "pairwave/quadrature.hpp"

namespace pairwave {

namespace {

constexpr double kPi = std::numbers::pi;

double xi(const GratingSpec& g, int n) {
  auto it = g.coefficients.find(n);
  return it == g.coefficients.end() ? 0.0 : std::arg(it->second);
}

double sq(int n) { return static_cast<double>(n) * static_cast<double>(n); }

void require_correlation_statistics(Statistics s) {
  if (s == Statistics::Distinguishable)
    throw std::invalid_argument("closed-form correlation needs boson, fermion or no-exchange statistics");
}

std::string column_name(Statistics s) {
  switch (s) {
    case Statistics::Boson: return "C_boson";
    case Statistics::Fermion: return "C_fermion";
    case Statistics::Distinguishable: return "C_distinguishable";
    case Statistics::NoExchange: return "C_noexchange";
  }
  return "C";
}

}  // namespace

TermPhase direct_pair_phase(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L, int n,
                            int m, int r, int s) {
  const double scale = -kPi * L / (g.d * g.d);
  const double value = scale * ((sq(m) - sq(n)) * k.wavelength() + (sq(r) - sq(s)) * p.wavelength()) +
                       xi(g, m) - xi(g, n) - xi(g, s) + xi(g, r);
  return {n, m, r, s, value, PhaseKind::DirectPair};
}

TermPhase crossed_phase(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L, int n,
                        int m, int r, int s) {
  const double scale = -kPi * L / (g.d * g.d);
  const double value = scale * ((sq(r) - sq(n)) * k.wavelength() + (sq(s) - sq(m)) * p.wavelength()) +
                       xi(g, r) + xi(g, s) - xi(g, n) - xi(g, m);
  return {n, m, r, s, value, PhaseKind::Crossed};
}

CorrelationSeries::CorrelationSeries(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p,
                                     double L)
    : d_(g.d) {
  g.validate();
  if (!g.is_normalized(1e-10))
    throw std::invalid_argument("grating coefficients must be normalized (sum |a_n|^2 = 1)");
  k.validate();
  p.validate();
  if (!std::isfinite(L) || L < 0.0) throw std::invalid_argument("L must be non-negative");

  std::map<int, double> modulus;
  for (const auto& [n, a] : g.coefficients)
    if (a != ComplexAmp{}) modulus.emplace(n, std::abs(a));
  auto has = [&](int n) { return modulus.count(n) != 0; };

  for (const auto& [n, an] : modulus) {
    for (const auto& [m, am] : modulus) {
      for (const auto& [r, ar] : modulus) {
        // Direct products of single-particle fringes survive the period
        // average only when the two fringe frequencies coincide.
        if (m > n) {
          const int s = r + (m - n);
          if (has(s)) {
            const double w = am * an * modulus.at(s) * ar;
            direct_.push_back({direct_pair_phase(g, k, p, L, n, m, r, s), w, s - r});
            direct_.push_back({direct_pair_phase(g, p, k, L, n, m, r, s), w, s - r});
          }
        }
        // Exchange term: the x dependence cancels when s - n + r - m = 0.
        const int s = n + m - r;
        if (has(s)) {
          const double w = an * am * ar * modulus.at(s);
          crossed_.push_back({crossed_phase(g, k, p, L, n, m, r, s), w, r - m});
        }
      }
    }
  }
}

double CorrelationSeries::operator()(Statistics s, double eta) const {
  require_correlation_statistics(s);
  const double q = 2.0 * kPi * eta / d_;
  double direct = 0.0;
  for (const auto& t : direct_) direct += t.weight * std::cos(t.harmonic * q + t.phase.value);
  if (s == Statistics::NoExchange) return 1.0 + direct;
  double crossed = 0.0;
  for (const auto& t : crossed_) crossed += t.weight * std::cos(t.harmonic * q + t.phase.value);
  return 1.0 + direct + exchange_sign(s) * crossed;
}

double correlation_closed(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, Statistics s,
                          double L, double eta) {
  require_correlation_statistics(s);
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
  return CorrelationSeries(g, k, p, L)(s, eta);
}

double correlation_numeric(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, Statistics s,
                           double L, double eta, double tol) {
  if (!std::isfinite(eta)) throw std::invalid_argument("eta must be finite");
  const PlaneProfile psi_k(g, k, L);
  const PlaneProfile psi_p(g, p, L);
  auto integrand = [&](double x) { return joint_probability_generic(psi_k, psi_p, s, x, x + eta, 0.0); };
  const auto r = integrate(integrand, 0.0, g.d, tol * g.d);
  require_converged(r, "correlation_numeric");
  return r.value / g.d;
}

double correlation_two_coefficient(double a0, double a1, double phi_kp, Statistics s, double eta,
                                   double d) {
  if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(phi_kp) || !std::isfinite(eta))
    throw std::invalid_argument("two-coefficient inputs must be finite");
  if (!(d > 0.0)) throw std::invalid_argument("grating period d must be positive");
  if (std::abs(a0 * a0 + a1 * a1 - 1.0) > 1e-12)
    throw std::invalid_argument("two-coefficient grating requires a0^2 + a1^2 = 1");
  const double sign = exchange_sign(s);
  const double w = 2.0 * a0 * a0 * a1 * a1;
  const double c = std::cos(phi_kp);
  return (1.0 + sign) + sign * w * (c - 1.0) + w * (sign + c) * std::cos(2.0 * kPi * eta / d);
}

SmallEtaLaw small_eta_asymptotics(double a0, double a1, double phi_kp, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("grating period d must be positive");
  if (std::abs(a0 * a0 + a1 * a1 - 1.0) > 1e-12)
    throw std::invalid_argument("two-coefficient grating requires a0^2 + a1^2 = 1");
  const double q2 = (2.0 * kPi / d) * (2.0 * kPi / d);
  const double ab = a0 * a0 * a1 * a1;
  SmallEtaLaw law;
  law.C0 = 4.0 * ab * (1.0 - std::cos(phi_kp));
  law.fermion_coeff = law.C0 / 4.0 * q2;
  law.boson_coeff = -ab * q2 * (1.0 + std::cos(phi_kp));
  return law;
}

double free_correlation_reference(PlaneWaveMode k, PlaneWaveMode p, Statistics s, double eta) {
  return 1.0 + exchange_sign(s) * std::cos((p.k - k.k) * eta);
}

ScanTable CorrelationCurve::to_table() const {
  std::vector<std::string> columns;
  for (const auto& [s, v] : values) columns.push_back(column_name(s));
  std::vector<double> flat(eta.points * values.size());
  std::size_t c = 0;
  for (const auto& [s, v] : values) {
    for (std::size_t i = 0; i < eta.points; ++i) flat[i * values.size() + c] = v.at(i);
    ++c;
  }
  return ScanTable({eta}, std::move(columns), std::move(flat));
}

Axis default_eta_axis(double d) { return Axis{"eta", 0.0, d, 257, "length"}; }

CorrelationCurve correlation_curve(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                                   const Axis& eta, std::span<const Statistics> stats,
                                   CorrelationMethod method, double tol, unsigned threads) {
  eta.validate();
  if (stats.empty()) throw std::invalid_argument("correlation curve needs at least one statistics");
  CorrelationCurve curve{eta, {}, "", k.k, p.k, L, false};
  const CorrelationSeries series(g, k, p, L);
  for (Statistics s : stats) {
    if (method == CorrelationMethod::Closed) require_correlation_statistics(s);
    std::vector<double> v(eta.points);
    parallel_for(eta.points, threads, [&](std::size_t i) {
      const double e = eta.coordinate(i);
      v[i] = method == CorrelationMethod::Closed ? series(s, e) : correlation_numeric(g, k, p, s, L, e, tol);
    });
    curve.values.emplace(s, std::move(v));
  }
  return curve;
}

std::vector<double> harmonic_magnitudes(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  std::vector<double> out(n / 2 + 1);
  for (std::size_t j = 0; j < out.size(); ++j) {
    ComplexAmp acc{};
    for (std::size_t i = 0; i < n; ++i)
      acc += samples[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>((j * i) % n) / n);
    out[j] = std::abs(acc) / static_cast<double>(n);
  }
  return out;
}

}  // namespace pairwave
