#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "pairwave/core.hpp"
#include "pairwave/scan_table.hpp"

namespace pairwave {

/// Periodic transmission function T(x) = sum_n A_n exp(2 pi i n x / d),
/// stored sparsely by harmonic index so asymmetric gratings are expressible.
struct GratingSpec {
  double d = 1.0;
  std::map<int, ComplexAmp> coefficients;

  void validate() const;
  int n_max() const;
  /// sum_n |A_n|^2
  double power() const;
  bool is_normalized(double tol = 1e-12) const;
  /// Harmonics with a nonzero coefficient, ascending.
  std::vector<int> support() const;
};

/// Monochromatic incident plane wave.
struct PlaneWaveMode {
  double k = 1.0;

  void validate() const;
  double wavelength() const;
  static PlaneWaveMode from_wavelength(double lambda);
};

/// Gaussian distribution of incident wavevectors.
struct MultiModeSpec {
  double k0 = 1.0;
  double sigma = 0.0;

  void validate() const;
};

/// Divides every coefficient by A = sqrt(sum |A_n|^2); phases are kept.
GratingSpec normalize_coefficients(const GratingSpec& g);

/// Near-field (eikonal) wave on the plane z = L behind a normalized grating:
///
///   psi(x) = e^{ikL} sum_n a_n exp(2 pi i n x / d) exp(-i pi n^2 L lambda_k / d^2)
///
/// The L-dependent factors are folded into per-harmonic coefficients once, so
/// repeated evaluation costs one complex exponential per harmonic.
class PlaneProfile {
 public:
  PlaneProfile(const GratingSpec& g, PlaneWaveMode mode, double L);

  ComplexAmp operator()(double x) const;
  /// Amplitude-function form; the problem is stationary so t is ignored.
  ComplexAmp operator()(double x, double /*t*/) const { return (*this)(x); }

  double period() const { return d_; }

 private:
  double d_;
  ComplexAmp global_phase_;
  std::vector<int> harmonics_;
  std::vector<ComplexAmp> weights_;
};

ComplexAmp propagated_amplitude(const GratingSpec& g, PlaneWaveMode m, double L, double x);
double intensity(const GratingSpec& g, PlaneWaveMode m, double L, double x);

/// phi_kp = (pi L / d^2)(lambda_k - lambda_p).
double phase_mismatch(PlaneWaveMode k, PlaneWaveMode p, double d, double L);

struct NodalPlane {
  int n = 0;
  double L = 0.0;
  bool trivial = false;  // n = 0: the grating plane itself
};

/// Planes L_n = 2 n d^2 / (lambda_k - lambda_p) with L_n > 0 for n in
/// [n_first, n_last]. n = 0 is reported as a trivial plane at L = 0 when it
/// lies in the range and include_trivial is set. nullopt when
/// lambda_k == lambda_p: there are no finite nodal planes.
std::optional<std::vector<NodalPlane>> nodal_planes(PlaneWaveMode k, PlaneWaveMode p, double d,
                                                    int n_first, int n_last,
                                                    bool include_trivial = false);

/// Two-particle detection probability on z = L for modes k and p.
double pair_probability_on_plane(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p,
                                 Statistics s, double L, double x, double y);

/// Pair probability over an (x, y) grid on z = L. Columns: P_boson,
/// P_fermion, P_noexchange, P_distinguishable.
ScanTable pair_probability_grid(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                                const Axis& x_axis, const Axis& y_axis, unsigned threads = 1);

/// Single-particle intensity over x for both modes. Columns: I_k, I_p.
ScanTable intensity_scan(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                         const Axis& x_axis, unsigned threads = 1);

struct MultimodeQuadrature {
  double tol = 1e-10;
  std::size_t budget = 1'000'000;
};

/// F_n = int dk f(k) e^{ikL} e^{-i pi n^2 L lambda_k / d^2} with f the unit-mass
/// Gaussian of mm, integrated over k0 +- 8 sigma. Throws NumericalError if
/// the quadrature does not converge and std::invalid_argument if the window
/// reaches k <= 0.
ComplexAmp multimode_coefficient(const GratingSpec& g, const MultiModeSpec& mm, int n, double L,
                                 const MultimodeQuadrature& q = {});

/// Unnormalized multimode wave sum_n a_n F_n exp(2 pi i n x / d).
class MultimodeProfile {
 public:
  MultimodeProfile(const GratingSpec& g, const MultiModeSpec& mm, double L,
                   const MultimodeQuadrature& q = {});
  ComplexAmp operator()(double x) const;
  ComplexAmp operator()(double x, double /*t*/) const { return (*this)(x); }

 private:
  double d_;
  std::vector<int> harmonics_;
  std::vector<ComplexAmp> weights_;
};

struct ValidityThresholds {
  /// Truncation n_0; negative means "keep every stored harmonic".
  int retained_n = -1;
  double min_retained_fraction = 0.99;
  double max_phase_ratio = 1e-2;
  double max_negative_mass = 1e-6;
};

struct Diagnostic {
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Diagnostics for treating a Gaussian wavepacket as its central mode.
struct ValidityReport {
  Diagnostic retained_fraction;  // sum_{|n|<=n0} |A_n|^2 / sum |A_n|^2, >= threshold
  Diagnostic phase_ratio;        // max_n pi n^2 / (d^2 k0^2) over retained n, <= threshold
  Diagnostic negative_k_mass;    // int_{-inf}^0 f(k) dk, <= threshold
  /// Informational: max_n L sigma pi n^2 / (d^2 k0^2), the neglected phase
  /// accumulated across one momentum width on the plane z = L.
  double residual_phase = 0.0;

  bool all_pass() const {
    return retained_fraction.pass && phase_ratio.pass && negative_k_mass.pass;
  }
};

ValidityReport multimode_validity(const GratingSpec& g, const MultiModeSpec& mm, double L,
                                  const ValidityThresholds& thresholds = {});

}  // namespace pairwave
