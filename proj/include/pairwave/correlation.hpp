#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pairwave/core.hpp"
#include "pairwave/grating.hpp"
#include "pairwave/scan_table.hpp"

namespace pairwave {

enum class PhaseKind {
  DirectPair,  // phi_mnsr: products of single-particle fringes
  Crossed,     // Theta_nmrs: exchange (interference) term
};

/// Phase of one index tuple in the correlation expansion.
struct TermPhase {
  int n = 0, m = 0, r = 0, s = 0;
  double value = 0.0;  // radians
  PhaseKind kind = PhaseKind::DirectPair;
};

/// phi^{kp}_{mnsr} = -(pi L / d^2)[(m^2 - n^2) lambda_k + (r^2 - s^2) lambda_p]
///                   + xi_m - xi_n - xi_s + xi_r
/// Swap k and p to obtain phi^{pk}.
TermPhase direct_pair_phase(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                            int n, int m, int r, int s);

/// Theta^{kp}_{nmrs} = -(pi L / d^2)[(r^2 - n^2) lambda_k + (s^2 - m^2) lambda_p]
///                     + xi_r + xi_s - xi_n - xi_m
TermPhase crossed_phase(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L, int n,
                        int m, int r, int s);

/// One cosine term  weight * cos(2 pi harmonic eta / d + phase.value).
struct CorrelationTerm {
  TermPhase phase;
  double weight = 0.0;
  int harmonic = 0;
};

/// The surviving terms of the period-averaged pair probability, enumerated
/// over the grating's nonzero harmonics with the selection rules
///   direct:  m > n, s > r, m - n = s - r   (both phi^{kp} and phi^{pk})
///   crossed: s - n + r - m = 0.
class CorrelationSeries {
 public:
  CorrelationSeries(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L);

  /// Statistics must be Boson, Fermion or NoExchange.
  double operator()(Statistics s, double eta) const;

  const std::vector<CorrelationTerm>& direct_terms() const { return direct_; }
  const std::vector<CorrelationTerm>& crossed_terms() const { return crossed_; }
  double period() const { return d_; }

 private:
  double d_;
  std::vector<CorrelationTerm> direct_;
  std::vector<CorrelationTerm> crossed_;
};

/// Closed-form C(eta) for plane-wave modes behind a normalized grating.
double correlation_closed(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, Statistics s,
                          double L, double eta);

/// C(eta) = (1/d) int_0^d P(x, x + eta) dx by adaptive quadrature to absolute
/// tolerance tol. Accepts every Statistics variant. Throws NumericalError on
/// non-convergence.
double correlation_numeric(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, Statistics s,
                           double L, double eta, double tol = 1e-10);

/// Two real coefficients a0, a1 with a0^2 + a1^2 = 1:
///   C = (1 +- 1) +- 2 a0^2 a1^2 (cos phi - 1) + 2 a0^2 a1^2 (+-1 + cos phi) cos(2 pi eta / d)
double correlation_two_coefficient(double a0, double a1, double phi_kp, Statistics s, double eta,
                                   double d);

struct SmallEtaLaw {
  double fermion_coeff = 0.0;  // C_F(eta) ~ fermion_coeff eta^2
  double boson_coeff = 0.0;    // C_B(eta) - C_B(0) ~ boson_coeff eta^2
  double C0 = 0.0;             // 4 a0^2 a1^2 (1 - cos phi)
};

SmallEtaLaw small_eta_asymptotics(double a0, double a1, double phi_kp, double d);

/// Free plane waves: 1 +- cos((p - k) eta).
double free_correlation_reference(PlaneWaveMode k, PlaneWaveMode p, Statistics s, double eta);

enum class CorrelationMethod { Closed, Numeric };

struct CorrelationCurve {
  Axis eta;
  std::map<Statistics, std::vector<double>> values;
  std::string grating_id;
  double k = 0.0;
  double p = 0.0;
  double L = 0.0;
  bool multimode_approximation = false;

  ScanTable to_table() const;
};

/// 257 points over [0, d].
Axis default_eta_axis(double d);

CorrelationCurve correlation_curve(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                                   const Axis& eta, std::span<const Statistics> stats,
                                   CorrelationMethod method, double tol = 1e-10,
                                   unsigned threads = 1);

/// |DFT_j| / N for j = 0 .. N/2 of uniformly spaced real samples.
std::vector<double> harmonic_magnitudes(std::span<const double> samples);

}  // namespace pairwave
