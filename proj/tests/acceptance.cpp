// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "pairwave/correlation.hpp"
#include "pairwave/diffraction.hpp"
#include "pairwave/grating.hpp"
#include "pairwave/quadrature.hpp"
#include "pairwave/sampling.hpp"

using namespace pairwave;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

struct Outcome {
  bool pass;
  std::string detail;
};

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %-34s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PacketPair counter_moving_pair() { return PacketPair::make(1.0, -1.0, std::sqrt(0.125), 1.0); }

GratingSpec random_grating(std::mt19937_64& rng, int n_max, double d = 1.0) {
  std::uniform_real_distribution<double> mag(0.1, 1.0), ph(-kPi, kPi);
  GratingSpec g{d, {}};
  for (int n = -n_max; n <= n_max; ++n) g.coefficients[n] = std::polar(mag(rng), ph(rng));
  return normalize_coefficients(g);
}

Outcome reference_point() {
  const auto pair = counter_moving_pair();
  const double t = 0.1, x0 = 0.1, y = -0.1;
  const auto R = ProbabilityScale::Reduced;
  const double dist = joint_probability_closed(pair, Statistics::Distinguishable, x0, y, t, R);
  const double bos = joint_probability_closed(pair, Statistics::Boson, x0, y, t, R);
  const double fer = joint_probability_closed(pair, Statistics::Fermion, x0, y, t, R);
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = slit_scan(pair, t, default_slit_axis(pair, t));
  const double scan = elapsed_since(t0);
  const bool ok_d = std::abs(dist - 1.0) <= 5e-7;
  const bool ok_b = std::abs(bos - 1.911570) <= 1e-5;
  const bool ok_f = std::abs(fer - 0.078481) <= 1e-5;
  const bool ok_t = scan < 1.0 && table.rows() == 401;
  return {ok_d && ok_b && ok_f && ok_t,
          fmt("D=%.9f B=%.9f (target 1.911570) F=%.9f (target 0.078481) ", dist, bos, fer) +
              fmt("scan401=%.4fs", scan)};
}

Outcome ratio_extremes() {
  double worst = 0.0;
  // Equal central momenta: the two packet modes coincide everywhere.
  const auto same = PacketPair::make(0.7, 0.7, 0.5, 1.0);
  const PacketMode a{same.k_packet}, b{same.p_packet};
  for (double x : {-1.0, 0.2, 1.4})
    for (double y : {-0.3, 0.9}) {
      worst = std::max(worst, std::abs(*exchange_ratio(a, b, Statistics::Boson, x, y, 0.6) - 2.0));
      worst = std::max(worst, std::abs(*exchange_ratio(a, b, Statistics::Fermion, x, y, 0.6)));
    }
  // Grating modes on a nodal plane match up to a global phase.
  std::mt19937_64 rng(7);
  const auto g = random_grating(rng, 2);
  const auto k = PlaneWaveMode::from_wavelength(0.5), p = PlaneWaveMode::from_wavelength(0.3);
  const double L1 = nodal_planes(k, p, g.d, 1, 1)->front().L;
  const PlaneProfile pk(g, k, L1), pp(g, p, L1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng), y = u(rng);
    const auto v = evaluate_modes(pk, pp, x, y, 0.0);
    if (!modes_match_up_to_global_phase(v)) return {false, "nodal-plane modes do not match"};
    const auto rb = exchange_ratio(v, Statistics::Boson), rf = exchange_ratio(v, Statistics::Fermion);
    if (!rb || !rf) continue;
    worst = std::max({worst, std::abs(*rb - 2.0), std::abs(*rf)});
  }
  return {worst <= 1e-10, fmt("max |ratio - target| = %.3e", worst)};
}

Outcome diffraction_oracle() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3), w(0.2, 2.0), m(0.5, 2.0), tt(0, 2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto pair = PacketPair::make(u(rng), u(rng), w(rng), m(rng));
    const double t = tt(rng);
    const double x = pair.k_packet.velocity() * t + u(rng), y = pair.p_packet.velocity() * t + u(rng);
    const double c4 = reduced_scale_factor(pair, t);
    for (auto s : {Statistics::Boson, Statistics::Fermion}) {
      const double generic = joint_probability_generic(PacketMode{pair.k_packet}, PacketMode{pair.p_packet}, s, x, y, t);
      worst = std::max(worst, std::abs(joint_probability_closed(pair, s, x, y, t, ProbabilityScale::Reduced) - generic / c4));
    }
  }
  return {worst <= 1e-12, fmt("max |closed - generic| = %.3e over 1000 draws (reduced units)", worst)};
}

Outcome normalization() {
  const WavePacket1D packet{1.0, std::sqrt(0.125), 1.0};
  double worst = 0.0;
  for (double scale : {0.0, 0.1, 1.0, 10.0}) {
    const double t = scale / (packet.hbar_over_m * packet.sigma * packet.sigma);
    const double c = packet.velocity() * t, w = std::sqrt(packet.spatial_variance(t));
    const auto r = integrate([&](double x) { return std::norm(packet_amplitude(packet, x, t)); }, c - 12 * w,
                             c + 12 * w, 1e-12);
    worst = std::max(worst, std::abs(r.value - 1.0));
  }
  return {worst <= 1e-8, fmt("max |norm - 1| = %.3e", worst)};
}

Outcome nodal_planes_check() {
  const auto g = normalize_coefficients({1.0, {{-1, 0.5}, {0, 1.0}, {1, 0.5}}});
  const auto k = PlaneWaveMode::from_wavelength(0.5), p = PlaneWaveMode::from_wavelength(0.3);
  const double L1 = nodal_planes(k, p, g.d, 1, 1)->front().L;
  const Axis ax{"x", 0.0, 1.0, 64, "length"}, ay{"y", 0.0, 1.0, 64, "length"};
  auto grid_max = [&](double L) {
    const auto col = pair_probability_grid(g, k, p, L, ax, ay).column("P_fermion");
    return *std::max_element(col.begin(), col.end());
  };
  const double at = grid_max(L1), half = grid_max(0.5 * L1);
  return {std::abs(L1 - 10.0) < 1e-12 && at <= 1e-12 && half > 1e-3,
          fmt("L1=%.15g max P_F(L1)=%.3e max P_F(L1/2)=%.4f", L1, at, half)};
}

Outcome correlation_oracle() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto g = random_grating(rng, 1 + i % 3);
    const PlaneWaveMode k{5 + 40 * u(rng)}, p{5 + 40 * u(rng)};
    const double L = 0.5 + 9.5 * u(rng);
    for (int j = 0; j < 20; ++j) {
      const double eta = u(rng) * g.d;
      for (auto s : {Statistics::Boson, Statistics::Fermion})
        worst = std::max(worst, std::abs(correlation_closed(g, k, p, s, L, eta) - correlation_numeric(g, k, p, s, L, eta)));
    }
  }
  return {worst <= 1e-8, fmt("max |closed - numeric| = %.3e (10 gratings x 20 eta x 2)", worst)};
}

Outcome two_coefficient() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0, cf0 = 0.0, cb0 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double w = u(rng), a0 = std::sqrt(w), a1 = std::sqrt(1 - w);
    const GratingSpec g{1.0, {{0, a0}, {1, a1}}};
    const PlaneWaveMode k{5 + 30 * u(rng)}, p{5 + 30 * u(rng)};
    const double L = 0.1 + 9.9 * u(rng), phi = phase_mismatch(k, p, g.d, L);
    for (int j = 0; j < 20; ++j) {
      const double eta = u(rng);
      for (auto s : {Statistics::Boson, Statistics::Fermion})
        worst = std::max(worst, std::abs(correlation_two_coefficient(a0, a1, phi, s, eta, g.d) -
                                         correlation_closed(g, k, p, s, L, eta)));
    }
    cf0 = std::max(cf0, std::abs(correlation_closed(g, k, p, Statistics::Fermion, L, 0.0)));
    cb0 = std::max(cb0, std::abs(correlation_closed(g, k, p, Statistics::Boson, L, 0.0) -
                                 (2 + 4 * a0 * a0 * a1 * a1 * std::cos(phi))));
  }
  return {worst <= 1e-12 && cf0 <= 1e-14 && cb0 <= 1e-13,
          fmt("max diff %.3e, |C_F(0)| %.3e, |C_B(0) - 2 - 4a0^2a1^2cos| %.3e", worst, cf0, cb0)};
}

Outcome short_distance() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double w = 0.1 + 0.8 * u(rng), a0 = std::sqrt(w), a1 = std::sqrt(1 - w), d = 0.5 + u(rng);
    const GratingSpec g{d, {{0, a0}, {1, a1}}};
    const PlaneWaveMode k{5 + 30 * u(rng)}, p{5 + 30 * u(rng)};
    const double L = 0.1 + 9.9 * u(rng), phi = phase_mismatch(k, p, d, L);
    const double eta = 1e-3 * d;
    const double c_plus = correlation_closed(g, k, p, Statistics::Fermion, L, eta);
    const double c_zero = correlation_closed(g, k, p, Statistics::Fermion, L, 0.0);
    const double c_minus = correlation_closed(g, k, p, Statistics::Fermion, L, -eta);
    const double fd = (c_plus - 2 * c_zero + c_minus) / (2 * eta * eta);
    const double C0 = 4 * a0 * a0 * a1 * a1 * (1 - std::cos(phi));
    const double law = C0 / 4 * std::pow(2 * kPi / d, 2);
    if (law < 1e-6) continue;
    worst = std::max(worst, std::abs(fd / law - 1.0));
  }
  return {worst <= 1e-2, fmt("max relative deviation of eta^2 coefficient = %.3e", worst)};
}

Outcome spectral_support() {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0, 1);
  const int n_max = 2;
  const auto g = random_grating(rng, n_max);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const PlaneWaveMode k{5 + 40 * u(rng)}, p{5 + 40 * u(rng)};
    const CorrelationSeries series(g, k, p, 0.5 + 9.5 * u(rng));
    for (auto s : {Statistics::Boson, Statistics::Fermion}) {
      std::vector<double> samples(256);
      for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = series(s, g.d * i / 256.0);
      const auto mags = harmonic_magnitudes(samples);
      for (std::size_t h = 2 * n_max + 1; h < mags.size(); ++h) worst = std::max(worst, mags[h]);
    }
  }
  return {worst < 1e-10, fmt("max magnitude beyond harmonic 2 n_max = %.3e (10 (k,p) draws)", worst)};
}

Outcome monte_carlo() {
  const auto pair = counter_moving_pair();
  const Density2D P = [&](double x, double y) {
    return joint_probability_closed(pair, Statistics::Boson, x, y, 0.1, ProbabilityScale::Reduced);
  };
  const Rectangle domain{-4, 4, -4, 4};
  const auto a = sample_joint(P, domain, 1'000'000, 2024);
  const auto b = sample_joint(P, domain, 1'000'000, 2024);
  const auto report = histogram_compare(a, P, 5, 5, 1000.0);
  const bool identical = a.pairs == b.pairs;
  return {identical && !report.insufficient_statistics && report.max_relative_deviation <= 0.05,
          fmt("max rel dev %.4f over %.0f bins (>= 1000 expected), rerun identical=%.0f", report.max_relative_deviation,
              static_cast<double>(report.qualifying_bins), identical ? 1.0 : 0.0)};
}

template <class F>
std::function<Outcome()> timed(F body, double limit) {
  return [body, limit] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    const double secs = elapsed_since(t0);
    if (secs >= limit) {
      o.pass = false;
      o.detail += fmt(" (runtime %.2fs exceeds %.0fs)", secs, limit);
    }
    return o;
  };
}

}  // namespace

int main() {
  criterion(1, "reference point values", reference_point);
  criterion(2, "exchange ratio extremes", ratio_extremes);
  criterion(3, "diffraction oracle equivalence", diffraction_oracle);
  criterion(4, "packet normalization", normalization);
  criterion(5, "nodal planes", nodal_planes_check);
  criterion(6, "correlation oracle equivalence", timed(correlation_oracle, 30.0));
  criterion(7, "two-coefficient special case", two_coefficient);
  criterion(8, "short-distance law", short_distance);
  criterion(9, "spectral support", spectral_support);
  criterion(10, "monte carlo consistency", timed(monte_carlo, 60.0));
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
