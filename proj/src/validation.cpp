#include "pairwave/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pairwave/correlation.hpp"
#include "pairwave/diffraction.hpp"
#include "pairwave/grating.hpp"
#include "pairwave/quadrature.hpp"
#include "pairwave/sampling.hpp"

namespace pairwave {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

GratingSpec random_grating(std::mt19937_64& rng, int n_max, double d = 1.0) {
  GratingSpec g{d, {}};
  for (int n = -n_max; n <= n_max; ++n)
    g.coefficients[n] = std::polar(uniform(rng, 0.1, 1.0), uniform(rng, -kPi, kPi));
  return normalize_coefficients(g);
}

ValidationCheck upper_bound(std::string name, double measured, double tol, std::string detail = {}) {
  return {std::move(name), measured <= tol, measured, tol, std::move(detail)};
}

ValidationCheck diffraction_equivalence(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto pair = PacketPair::make(uniform(rng, -3, 3), uniform(rng, -3, 3), uniform(rng, 0.2, 2.0),
                                       uniform(rng, 0.5, 2.0));
    const double t = uniform(rng, 0.0, 2.0);
    const double w = std::sqrt(pair.k_packet.spatial_variance(t));
    const double x = pair.k_packet.velocity() * t + uniform(rng, -3, 3) * w;
    const double y = pair.p_packet.velocity() * t + uniform(rng, -3, 3) * w;
    const double c4 = reduced_scale_factor(pair, t);
    for (auto s : {Statistics::Boson, Statistics::Fermion, Statistics::NoExchange, Statistics::Distinguishable}) {
      const double closed = joint_probability_closed(pair, s, x, y, t, ProbabilityScale::Reduced);
      const double generic =
          joint_probability_generic(PacketMode{pair.k_packet}, PacketMode{pair.p_packet}, s, x, y, t) / c4;
      worst = std::max(worst, std::abs(closed - generic));
    }
  }
  return upper_bound("diffraction_closed_vs_generic", worst, 1e-12, "1000 random draws, reduced units");
}

ValidationCheck packet_normalization() {
  const WavePacket1D packet{1.0, std::sqrt(0.125), 1.0};
  double worst = 0.0;
  for (double scale : {0.0, 0.1, 1.0, 10.0}) {
    const double t = scale / (packet.hbar_over_m * packet.sigma * packet.sigma);
    const double centre = packet.velocity() * t;
    const double w = std::sqrt(packet.spatial_variance(t));
    const auto r = integrate([&](double x) { return std::norm(packet_amplitude(packet, x, t)); },
                             centre - 10 * w, centre + 10 * w, 1e-11);
    worst = std::max(worst, r.converged ? std::abs(r.value - 1.0) : 1.0);
  }
  return upper_bound("packet_normalization", worst, 1e-8, "t in {0, 0.1, 1, 10} m/(hbar sigma^2)");
}

std::vector<ValidationCheck> exchange_properties(std::mt19937_64& rng) {
  double sym = 0.0, diag = 0.0, decomp = 0.0;
  for (int i = 0; i < 500; ++i) {
    const auto pair = PacketPair::make(uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0.3, 1.5), 1.0);
    const PacketMode a{pair.k_packet}, b{pair.p_packet};
    const double t = uniform(rng, 0.0, 3.0);
    const double x = uniform(rng, -4, 4), y = uniform(rng, -4, 4);
    const double scale = joint_probability_generic(a, b, Statistics::NoExchange, x, y, t);
    for (auto s : {Statistics::Boson, Statistics::Fermion}) {
      const double pxy = joint_probability_generic(a, b, s, x, y, t);
      const double pyx = joint_probability_generic(a, b, s, y, x, t);
      if (scale > 0.0) sym = std::max(sym, std::abs(pxy - pyx) / scale);
    }
    const double local = joint_probability_generic(a, b, Statistics::NoExchange, x, x, t);
    if (local > 0.0)
      diag = std::max(diag, joint_probability_generic(a, b, Statistics::Fermion, x, x, t) / local);
    const double sum = joint_probability_generic(a, b, Statistics::Boson, x, y, t) +
                       joint_probability_generic(a, b, Statistics::Fermion, x, y, t);
    if (scale > 0.0) decomp = std::max(decomp, std::abs(sum - 2.0 * scale) / scale);
  }
  return {upper_bound("exchange_symmetry", sym, 1e-14, "relative to P_NE"),
          upper_bound("pauli_diagonal", diag, 1e-14, "fermion P(x,x) relative to P_NE(x,x)"),
          upper_bound("boson_plus_fermion_is_twice_noexchange", decomp, 1e-14)};
}

std::vector<ValidationCheck> grating_properties(std::mt19937_64& rng) {
  double norm_err = 0.0, talbot = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto g = random_grating(rng, 1 + i % 3, uniform(rng, 0.5, 2.0));
    const PlaneWaveMode m{uniform(rng, 5.0, 50.0)};
    const double L = uniform(rng, 0.0, 20.0);
    const PlaneProfile psi(g, m, L);
    const auto r = integrate([&](double x) { return std::norm(psi(x)); }, 0.0, g.d, 1e-12);
    norm_err = std::max(norm_err, r.converged ? std::abs(r.value / g.d - 1.0) : 1.0);
    const PlaneProfile shifted(g, m, L + 2.0 * g.d * g.d / m.wavelength());
    for (int j = 0; j < 32; ++j) {
      const double x = g.d * j / 32.0;
      talbot = std::max(talbot, std::abs(std::norm(psi(x)) - std::norm(shifted(x))));
    }
  }
  return {upper_bound("grating_relative_normalization", norm_err, 1e-10),
          upper_bound("talbot_periodicity", talbot, 1e-12)};
}

std::vector<ValidationCheck> nodal_plane_checks() {
  GratingSpec raw{1.0, {{-1, 0.5}, {0, 1.0}, {1, 0.5}}};
  const auto g = normalize_coefficients(raw);
  const auto k = PlaneWaveMode::from_wavelength(0.5);
  const auto p = PlaneWaveMode::from_wavelength(0.3);
  const double L1 = nodal_planes(k, p, g.d, 1, 1)->front().L;
  const Axis ax{"x", 0.0, g.d, 64, "length"}, ay{"y", 0.0, g.d, 64, "length"};
  auto grid_max = [&](double L) {
    const auto col = pair_probability_grid(g, k, p, L, ax, ay).column("P_fermion");
    return *std::max_element(col.begin(), col.end());
  };
  const double at_plane = grid_max(L1);
  const double generic = grid_max(0.5 * L1);

  const PlaneProfile pk(g, k, L1), pp(g, p, L1);
  const ComplexAmp phase = std::polar(1.0, (k.k - p.k) * L1);
  double match = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double x = j / 64.0;
    match = std::max(match, std::abs(pk(x) - phase * pp(x)));
  }
  return {upper_bound("nodal_plane_fermion_zero", at_plane, 1e-12, "64x64 grid at L1"),
          {"nodal_plane_is_special", generic > 1e-3, generic, 1e-3, "grid maximum at L1/2 must exceed"},
          upper_bound("phase_matching_equivalence", match, 1e-12)};
}

std::vector<ValidationCheck> correlation_checks(std::mt19937_64& rng) {
  double worst = 0.0, mean_err = 0.0, off_harmonic = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int n_max = 1 + i % 3;
    const auto g = random_grating(rng, n_max);
    const PlaneWaveMode k{uniform(rng, 5, 40)}, p{uniform(rng, 5, 40)};
    const double L = uniform(rng, 0.5, 10.0);
    for (int j = 0; j < 20; ++j) {
      const double eta = uniform(rng, 0.0, g.d);
      const double cb = correlation_closed(g, k, p, Statistics::Boson, L, eta);
      const double cf = correlation_closed(g, k, p, Statistics::Fermion, L, eta);
      worst = std::max(worst, std::abs(cb - correlation_numeric(g, k, p, Statistics::Boson, L, eta, 1e-11)));
      worst = std::max(worst, std::abs(cf - correlation_numeric(g, k, p, Statistics::Fermion, L, eta, 1e-11)));
      mean_err = std::max(mean_err, std::abs(0.5 * (cb + cf) -
                                             correlation_numeric(g, k, p, Statistics::NoExchange, L, eta, 1e-11)));
    }
    const CorrelationSeries series(g, k, p, L);
    std::vector<double> samples(256);
    for (std::size_t s = 0; s < samples.size(); ++s)
      samples[s] = series(Statistics::Fermion, g.d * static_cast<double>(s) / 256.0);
    const auto mags = harmonic_magnitudes(samples);
    for (std::size_t h = 2 * n_max + 1; h < mags.size(); ++h) off_harmonic = std::max(off_harmonic, mags[h]);
  }

  const double a0 = std::sqrt(0.3), a1 = std::sqrt(0.7);
  const GratingSpec two{1.0, {{0, a0}, {1, a1}}};
  const PlaneWaveMode k{12.0}, p{17.0};
  const double L = 3.7;
  const double phi = phase_mismatch(k, p, two.d, L);
  double two_err = 0.0;
  for (int j = 0; j <= 20; ++j) {
    const double eta = j / 20.0;
    for (auto s : {Statistics::Boson, Statistics::Fermion})
      two_err = std::max(two_err, std::abs(correlation_two_coefficient(a0, a1, phi, s, eta, two.d) -
                                           correlation_closed(two, k, p, s, L, eta)));
  }
  return {upper_bound("correlation_closed_vs_numeric", worst, 1e-8),
          upper_bound("correlation_boson_fermion_mean", mean_err, 1e-8),
          upper_bound("correlation_two_coefficient", two_err, 1e-12),
          upper_bound("correlation_spectral_support", off_harmonic, 1e-10, "harmonics above 2 n_max")};
}

ValidationCheck monte_carlo_check(unsigned threads, unsigned long long seed) {
  const auto pair = PacketPair::make(1.0, -1.0, std::sqrt(0.125), 1.0);
  const double t = 0.1;
  const Density2D density = [&](double x, double y) {
    return joint_probability_closed(pair, Statistics::Boson, x, y, t, ProbabilityScale::Reduced);
  };
  SamplerOptions opt;
  opt.threads = threads;
  const auto batch = sample_joint(density, {-4, 4, -4, 4}, 1'000'000, seed, opt);
  const auto report = histogram_compare(batch, density, 5, 5, 1000.0);
  ValidationCheck c = upper_bound("monte_carlo_histogram", report.max_relative_deviation, 0.05,
                                  "1e6 boson samples, 5x5 bins, bins >= 1000 expected");
  c.passed = c.passed && !report.insufficient_statistics;
  return c;
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<ValidationCheck> checks;
  auto append = [&](std::vector<ValidationCheck> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  checks.push_back(diffraction_equivalence(rng));
  checks.push_back(packet_normalization());
  append(exchange_properties(rng));
  append(grating_properties(rng));
  append(nodal_plane_checks());
  append(correlation_checks(rng));
  if (options.include_sampling) checks.push_back(monte_carlo_check(options.threads, options.seed));
  return checks;
}

}  // namespace pairwave
