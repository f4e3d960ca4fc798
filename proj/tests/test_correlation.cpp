#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pairwave/correlation.hpp"

using namespace pairwave;

namespace {

GratingSpec to_spec(const std::map<int, oracle::cplx>& a, double d) {
  GratingSpec g{d, {}};
  for (const auto& [n, v] : a) g.coefficients[n] = v;
  return g;
}

}  // namespace

TEST(Correlation, ClosedFormMatchesUniformAverageOracle) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 12; ++i) {
    const auto a = oracle::random_coefficients(rng, 1 + i % 3);
    const double d = 0.5 + u(rng), k = 5 + 40 * u(rng), p = 5 + 40 * u(rng), L = 10 * u(rng);
    const auto g = to_spec(a, d);
    for (int j = 0; j < 8; ++j) {
      const double eta = 2 * d * u(rng);
      EXPECT_NEAR(correlation_closed(g, {k}, {p}, Statistics::Boson, L, eta),
                  oracle::correlation(a, d, k, p, L, 1.0, eta), 1e-12);
      EXPECT_NEAR(correlation_closed(g, {k}, {p}, Statistics::Fermion, L, eta),
                  oracle::correlation(a, d, k, p, L, -1.0, eta), 1e-12);
      EXPECT_NEAR(correlation_closed(g, {k}, {p}, Statistics::NoExchange, L, eta),
                  oracle::correlation(a, d, k, p, L, 0.0, eta), 1e-12);
    }
  }
}

TEST(Correlation, ClosedFormMatchesQuadrature) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 10; ++i) {
    const auto g = to_spec(oracle::random_coefficients(rng, 1 + i % 3), 1.0);
    const PlaneWaveMode k{5 + 40 * u(rng)}, p{5 + 40 * u(rng)};
    const double L = 10 * u(rng);
    for (int j = 0; j < 20; ++j) {
      const double eta = u(rng);
      for (auto s : {Statistics::Boson, Statistics::Fermion})
        EXPECT_NEAR(correlation_closed(g, k, p, s, L, eta), correlation_numeric(g, k, p, s, L, eta), 1e-8);
    }
  }
}

TEST(Correlation, PinnedPhaseForSingleTuple) {
  // Grating with harmonics 0 and 1 only: the direct tuple (n,m,r,s) = (0,1,0,1)
  // carries -(pi L / d^2)(lambda_k - lambda_p) + xi_1 - xi_0 - xi_1 + xi_0.
  const GratingSpec g{2.0, {{0, std::polar(std::sqrt(0.4), 0.3)}, {1, std::polar(std::sqrt(0.6), -1.1)}}};
  const PlaneWaveMode k{7.0}, p{11.0};
  const double L = 1.9;
  const auto phi = direct_pair_phase(g, k, p, L, 0, 1, 0, 1);
  EXPECT_EQ(phi.kind, PhaseKind::DirectPair);
  EXPECT_NEAR(phi.value, -oracle::pi * L / 4.0 * (k.wavelength() - p.wavelength()), 1e-14);
  const auto theta = crossed_phase(g, k, p, L, 0, 1, 1, 0);
  EXPECT_EQ(theta.kind, PhaseKind::Crossed);
  EXPECT_NEAR(theta.value, -oracle::pi * L / 4.0 * (k.wavelength() - p.wavelength()), 1e-14);
  const CorrelationSeries series(g, k, p, L);
  EXPECT_EQ(series.direct_terms().size(), 2u);  // phi^kp and phi^pk
  EXPECT_DOUBLE_EQ(series.period(), 2.0);
}

TEST(Correlation, TwoCoefficientReduction) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    const double w = u(rng);
    const double a0 = std::sqrt(w), a1 = std::sqrt(1 - w);
    const GratingSpec g{1.5, {{0, a0}, {1, a1}}};
    const PlaneWaveMode k{5 + 30 * u(rng)}, p{5 + 30 * u(rng)};
    const double L = 0.1 + 8 * u(rng);
    const double phi = phase_mismatch(k, p, g.d, L);
    for (int j = 0; j < 10; ++j) {
      const double eta = 3 * u(rng);
      for (auto s : {Statistics::Boson, Statistics::Fermion})
        EXPECT_NEAR(correlation_two_coefficient(a0, a1, phi, s, eta, g.d), correlation_closed(g, k, p, s, L, eta),
                    1e-12);
    }
    EXPECT_NEAR(correlation_closed(g, k, p, Statistics::Fermion, L, 0.0), 0.0, 1e-14);
    EXPECT_NEAR(correlation_closed(g, k, p, Statistics::Boson, L, 0.0), 2 + 4 * a0 * a0 * a1 * a1 * std::cos(phi),
                1e-13);
  }
  EXPECT_THROW(correlation_two_coefficient(0.5, 0.5, 0.0, Statistics::Boson, 0.0, 1.0), std::invalid_argument);
}

TEST(Correlation, ShortDistanceLaw) {
  const double a0 = std::sqrt(0.35), a1 = std::sqrt(0.65), d = 1.0, phi = 1.234;
  const auto law = small_eta_asymptotics(a0, a1, phi, d);
  EXPECT_NEAR(law.C0, 4 * 0.35 * 0.65 * (1 - std::cos(phi)), 1e-15);
  EXPECT_NEAR(law.fermion_coeff, law.C0 / 4 * std::pow(2 * oracle::pi / d, 2), 1e-13);
  const double eta = 1e-3 * d;
  const double cf = correlation_two_coefficient(a0, a1, phi, Statistics::Fermion, eta, d);
  EXPECT_NEAR(cf / (eta * eta), law.fermion_coeff, 1e-2 * law.fermion_coeff);
  const double db = correlation_two_coefficient(a0, a1, phi, Statistics::Boson, eta, d) -
                    correlation_two_coefficient(a0, a1, phi, Statistics::Boson, 0.0, d);
  EXPECT_NEAR(db / (eta * eta), law.boson_coeff, 1e-2 * std::abs(law.boson_coeff));
}

TEST(Correlation, SpectralSupportLimitedToGratingHarmonics) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0, 1);
  const auto g = to_spec(oracle::random_coefficients(rng, 2), 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const PlaneWaveMode k{5 + 40 * u(rng)}, p{5 + 40 * u(rng)};
    const CorrelationSeries series(g, k, p, 3.3);
    std::vector<double> samples(256);
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = series(Statistics::Boson, i / 256.0);
    const auto mags = harmonic_magnitudes(samples);
    ASSERT_EQ(mags.size(), 129u);
    for (std::size_t h = 5; h < mags.size(); ++h) EXPECT_LT(mags[h], 1e-10) << h;
  }
  // Free plane waves oscillate at (p - k), which is not tied to the grating.
  const PlaneWaveMode k{10.0}, p{10.0 + 2 * oracle::pi * 7.5};
  std::vector<double> free(256);
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = free_correlation_reference(k, p, Statistics::Boson, i / 256.0);
  const auto fm = harmonic_magnitudes(free);
  EXPECT_GT(*std::max_element(fm.begin() + 5, fm.end()), 1e-3);
}

TEST(Correlation, HarmonicMagnitudesOfKnownSignal) {
  std::vector<double> s(64);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 2.0 + 0.5 * std::cos(2 * oracle::pi * 3 * i / 64.0 + 0.4);
  const auto m = harmonic_magnitudes(s);
  EXPECT_NEAR(m[0], 2.0, 1e-13);
  EXPECT_NEAR(m[3], 0.25, 1e-13);
  EXPECT_NEAR(m[4], 0.0, 1e-13);
}

TEST(CorrelationCurve, TableAndThreads) {
  const auto g = normalize_coefficients({1.0, {{-1, 0.5}, {0, 1.0}, {1, 0.5}}});
  const PlaneWaveMode k{12.0}, p{15.0};
  const std::vector<Statistics> stats{Statistics::Boson, Statistics::Fermion};
  const Axis eta = default_eta_axis(1.0);
  EXPECT_EQ(eta.points, 257u);
  const auto c1 = correlation_curve(g, k, p, 2.0, eta, stats, CorrelationMethod::Closed, 1e-10, 1);
  const auto c4 = correlation_curve(g, k, p, 2.0, eta, stats, CorrelationMethod::Closed, 1e-10, 4);
  EXPECT_EQ(c1.values, c4.values);
  const auto table = c1.to_table();
  EXPECT_EQ(table.columns(), (std::vector<std::string>{"C_boson", "C_fermion"}));
  EXPECT_NEAR(table.at(0, 1), 0.0, 1e-14);
  // C is periodic in eta with the grating period.
  EXPECT_NEAR(table.at(0, 0), table.at(256, 0), 1e-12);
}

TEST(Correlation, RejectsUnnormalizedOrDistinguishable) {
  const GratingSpec raw{1.0, {{0, 1.0}, {1, 1.0}}};
  EXPECT_THROW(correlation_closed(raw, {5.0}, {6.0}, Statistics::Boson, 1.0, 0.0), std::invalid_argument);
  const auto g = normalize_coefficients(raw);
  EXPECT_THROW(correlation_closed(g, {5.0}, {6.0}, Statistics::Distinguishable, 1.0, 0.0), std::invalid_argument);
  EXPECT_NO_THROW(correlation_numeric(g, {5.0}, {6.0}, Statistics::Distinguishable, 1.0, 0.0));
}
