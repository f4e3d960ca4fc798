#include "pairwave/diffraction.hpp"

#include <cmath>
#include <stdexcept>

#include "pairwave/parallel.hpp"

namespace pairwave {

PacketPair PacketPair::make(double k0, double p0, double sigma, double hbar_over_m) {
  PacketPair pair{{k0, sigma, hbar_over_m}, {p0, sigma, hbar_over_m}};
  pair.validate();
  return pair;
}

void PacketPair::validate() const {
  k_packet.validate();
  p_packet.validate();
  if (k_packet.sigma != p_packet.sigma)
    throw std::invalid_argument("packet pair must share the same sigma");
  if (k_packet.hbar_over_m != p_packet.hbar_over_m)
    throw std::invalid_argument("packet pair must share the same hbar_over_m");
}

double reduced_scale_factor(const PacketPair& pair, double t) {
  const double c2 = std::norm(pair.k_packet.prefactor(t));
  return c2 * c2;
}

double joint_probability_closed(const PacketPair& pair, Statistics s, double x, double y,
                                double t, ProbabilityScale scale) {
  pair.validate();
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t))
    throw std::invalid_argument("coordinates and time must be finite");
  if (t < 0.0) throw std::invalid_argument("t must be non-negative");

  const double s2 = pair.k_packet.sigma * pair.k_packet.sigma;
  const double mu = pair.k_packet.mu(t);
  const double xk = pair.k_packet.velocity() * t;
  const double xp = pair.p_packet.velocity() * t;
  const double A = -2.0 * s2 / mu * ((x - xk) * (x - xk) + (y - xp) * (y - xp));
  const double B = -2.0 * s2 / mu * ((x - xp) * (x - xp) + (y - xk) * (y - xk));

  double reduced = 0.0;
  switch (s) {
    case Statistics::Distinguishable:
      reduced = std::exp(A);
      break;
    case Statistics::NoExchange:
      reduced = 0.5 * (std::exp(A) + std::exp(B));
      break;
    case Statistics::Boson:
    case Statistics::Fermion: {
      const double fringe =
          std::cos(2.0 / mu * (x - y) * (pair.k_packet.k0 - pair.p_packet.k0));
      reduced = 0.5 * (std::exp(A) + std::exp(B) +
                       2.0 * exchange_sign(s) * std::exp(0.5 * (A + B)) * fringe);
      if (reduced < 0.0) reduced = 0.0;  // rounding at exact nodes
      break;
    }
  }
  return scale == ProbabilityScale::Reduced ? reduced : reduced * reduced_scale_factor(pair, t);
}

Axis default_slit_axis(const PacketPair& pair, double t) {
  pair.validate();
  const double width = std::sqrt(pair.k_packet.mu(t)) / (2.0 * pair.k_packet.sigma);
  const double centre = pair.p_packet.velocity() * t;
  return Axis{"y", centre - 5.0 * width, centre + 5.0 * width, 401, "length"};
}

ScanTable slit_scan(const PacketPair& pair, double t, const Axis& y_axis, unsigned threads) {
  pair.validate();
  y_axis.validate();
  const double x0 = pair.k_packet.velocity() * t;
  const std::size_t n = y_axis.points;
  std::vector<double> values(3 * n);
  parallel_for(n, threads, [&](std::size_t i) {
    const double y = y_axis.coordinate(i);
    values[3 * i + 0] = joint_probability_closed(pair, Statistics::Boson, x0, y, t, ProbabilityScale::Reduced);
    values[3 * i + 1] = joint_probability_closed(pair, Statistics::Fermion, x0, y, t, ProbabilityScale::Reduced);
    values[3 * i + 2] = joint_probability_closed(pair, Statistics::Distinguishable, x0, y, t, ProbabilityScale::Reduced);
  });
  return ScanTable({y_axis}, {"P_boson", "P_fermion", "P_distinguishable"}, std::move(values));
}

}  // namespace pairwave
