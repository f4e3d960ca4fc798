#include "pairwave/core.hpp"

#include <cmath>
#include <numbers>

namespace pairwave {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_finite(ComplexAmp v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::invalid_argument(std::string(what) + " must be finite");
}

double wrap_phase(double phi) { return std::remainder(phi, 2.0 * std::numbers::pi); }

}  // namespace

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
    case Statistics::Distinguishable: return "distinguishable";
    case Statistics::NoExchange: return "no-exchange";
  }
  return "unknown";
}

Statistics statistics_from_string(std::string_view name) {
  if (name == "boson") return Statistics::Boson;
  if (name == "fermion") return Statistics::Fermion;
  if (name == "distinguishable") return Statistics::Distinguishable;
  if (name == "no-exchange") return Statistics::NoExchange;
  throw std::invalid_argument("unknown statistics '" + std::string(name) + "'");
}

double exchange_sign(Statistics s) {
  switch (s) {
    case Statistics::Boson: return 1.0;
    case Statistics::Fermion: return -1.0;
    default:
      throw std::invalid_argument("statistics '" + std::string(to_string(s)) +
                                  "' has no exchange sign");
  }
}

void WavePacket1D::validate() const {
  require_finite(k0, "k0");
  require_finite(sigma, "sigma");
  require_finite(hbar_over_m, "hbar_over_m");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(hbar_over_m > 0.0)) throw std::invalid_argument("hbar_over_m must be positive");
}

double WavePacket1D::mu(double t) const {
  const double spread = hbar_over_m * sigma * sigma * t;
  return 2.0 * (1.0 + spread * spread);
}

ComplexAmp WavePacket1D::prefactor(double t) const {
  const ComplexAmp inner(1.0 / sigma, hbar_over_m * sigma * t);
  return std::pow(std::numbers::pi, -0.25) / std::sqrt(inner);
}

double WavePacket1D::spatial_variance(double t) const { return mu(t) / (4.0 * sigma * sigma); }

ComplexAmp packet_amplitude(const WavePacket1D& p, double x, double t) {
  p.validate();
  require_finite(x, "x");
  require_finite(t, "t");
  if (t < 0.0) throw std::invalid_argument("t must be non-negative");

  const double tau = p.hbar_over_m * t;  // hbar t / m
  const double s2 = p.sigma * p.sigma;
  const double mu = p.mu(t);
  const double drift = x - p.velocity() * t;
  // Phase numerator carries k0 (2x - v t) + hbar sigma^4 x^2 t / m, without
  // the factor 2 on the last term that some references include.
  const double phase = p.k0 * (2.0 * x - p.velocity() * t) + s2 * s2 * x * x * tau;
  const ComplexAmp exponent(-s2 * drift * drift / mu, phase / mu);
  return p.prefactor(t) * std::exp(exponent);
}

ComplexAmp symmetrized_amplitude(ComplexAmp psiA_at_x, ComplexAmp psiB_at_y,
                                 ComplexAmp psiB_at_x, ComplexAmp psiA_at_y, Statistics s) {
  const double sign = exchange_sign(s);
  return (psiA_at_x * psiB_at_y + sign * psiB_at_x * psiA_at_y) / std::numbers::sqrt2;
}

double joint_probability(const ModeValues& v, Statistics s) {
  require_finite(v.a_at_x, "amplitude a(x)");
  require_finite(v.a_at_y, "amplitude a(y)");
  require_finite(v.b_at_x, "amplitude b(x)");
  require_finite(v.b_at_y, "amplitude b(y)");

  if (s == Statistics::Distinguishable) return std::norm(v.a_at_x) * std::norm(v.b_at_y);

  const double direct =
      0.5 * std::norm(v.a_at_x) * std::norm(v.b_at_y) + 0.5 * std::norm(v.b_at_x) * std::norm(v.a_at_y);
  if (s == Statistics::NoExchange) return direct;

  // Modulus-square form: non-negative by construction and exactly zero for
  // fermions on the diagonal.
  return 0.5 * std::norm(v.a_at_x * v.b_at_y + exchange_sign(s) * (v.b_at_x * v.a_at_y));
}

std::optional<double> exchange_ratio(const ModeValues& v, Statistics s) {
  exchange_sign(s);
  const double denominator = joint_probability(v, Statistics::NoExchange);
  if (denominator == 0.0) return std::nullopt;
  return joint_probability(v, s) / denominator;
}

bool modes_match_up_to_global_phase(const ModeValues& v, double tol) {
  if (std::abs(std::abs(v.a_at_x) - std::abs(v.b_at_x)) >= tol) return false;
  if (std::abs(std::abs(v.a_at_y) - std::abs(v.b_at_y)) >= tol) return false;
  const double dx = std::arg(v.a_at_x) - std::arg(v.b_at_x);
  const double dy = std::arg(v.a_at_y) - std::arg(v.b_at_y);
  return std::abs(wrap_phase(dx - dy)) < tol;
}

}  // namespace pairwave
