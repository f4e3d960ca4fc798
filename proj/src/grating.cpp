#include "pairwave/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pairwave/parallel.hpp"
#include "pairwave/quadrature.hpp"

namespace pairwave {

namespace {

constexpr double kPi = std::numbers::pi;

void require_normalized(const GratingSpec& g) {
  g.validate();
  if (!g.is_normalized(1e-10))
    throw std::invalid_argument("grating coefficients must be normalized (sum |a_n|^2 = 1)");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

void GratingSpec::validate() const {
  if (!std::isfinite(d) || !(d > 0.0)) throw std::invalid_argument("grating period d must be positive");
  if (coefficients.empty()) throw std::invalid_argument("grating has no coefficients");
  bool any_nonzero = false;
  for (const auto& [n, a] : coefficients) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("grating coefficient A_" + std::to_string(n) + " is not finite");
    any_nonzero = any_nonzero || a != ComplexAmp{};
  }
  if (!any_nonzero) throw std::invalid_argument("grating coefficients are all zero");
}

int GratingSpec::n_max() const {
  int m = 0;
  for (const auto& [n, a] : coefficients) m = std::max(m, std::abs(n));
  return m;
}

double GratingSpec::power() const {
  double s = 0.0;
  for (const auto& [n, a] : coefficients) s += std::norm(a);
  return s;
}

bool GratingSpec::is_normalized(double tol) const { return std::abs(power() - 1.0) <= tol; }

std::vector<int> GratingSpec::support() const {
  std::vector<int> out;
  for (const auto& [n, a] : coefficients)
    if (a != ComplexAmp{}) out.push_back(n);
  return out;
}

void PlaneWaveMode::validate() const {
  if (!std::isfinite(k) || !(k > 0.0)) throw std::invalid_argument("wavevector k must be positive");
}

double PlaneWaveMode::wavelength() const { return 2.0 * kPi / k; }

PlaneWaveMode PlaneWaveMode::from_wavelength(double lambda) {
  if (!std::isfinite(lambda) || !(lambda > 0.0))
    throw std::invalid_argument("wavelength must be positive");
  return PlaneWaveMode{2.0 * kPi / lambda};
}

void MultiModeSpec::validate() const {
  if (!std::isfinite(k0) || !(k0 > 0.0)) throw std::invalid_argument("multimode k0 must be positive");
  if (!std::isfinite(sigma) || !(sigma > 0.0))
    throw std::invalid_argument("multimode sigma must be positive");
}

GratingSpec normalize_coefficients(const GratingSpec& g) {
  g.validate();
  const double norm = std::sqrt(g.power());
  GratingSpec out{g.d, {}};
  for (const auto& [n, a] : g.coefficients) out.coefficients.emplace(n, a / norm);
  return out;
}

PlaneProfile::PlaneProfile(const GratingSpec& g, PlaneWaveMode mode, double L) : d_(g.d) {
  require_normalized(g);
  mode.validate();
  require_finite(L, "L");
  if (L < 0.0) throw std::invalid_argument("propagation distance L must be non-negative");
  global_phase_ = std::polar(1.0, mode.k * L);
  const double lambda = mode.wavelength();
  for (const auto& [n, a] : g.coefficients) {
    if (a == ComplexAmp{}) continue;
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    harmonics_.push_back(n);
    weights_.push_back(a * std::polar(1.0, -kPi * n2 * L * lambda / (d_ * d_)));
  }
}

ComplexAmp PlaneProfile::operator()(double x) const {
  ComplexAmp sum{};
  for (std::size_t i = 0; i < harmonics_.size(); ++i)
    sum += weights_[i] * std::polar(1.0, 2.0 * kPi * harmonics_[i] * x / d_);
  return global_phase_ * sum;
}

ComplexAmp propagated_amplitude(const GratingSpec& g, PlaneWaveMode m, double L, double x) {
  require_finite(x, "x");
  return PlaneProfile(g, m, L)(x);
}

double intensity(const GratingSpec& g, PlaneWaveMode m, double L, double x) {
  return std::norm(propagated_amplitude(g, m, L, x));
}

double phase_mismatch(PlaneWaveMode k, PlaneWaveMode p, double d, double L) {
  k.validate();
  p.validate();
  if (!std::isfinite(d) || !(d > 0.0)) throw std::invalid_argument("grating period d must be positive");
  require_finite(L, "L");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  return kPi * L / (d * d) * (k.wavelength() - p.wavelength());
}

std::optional<std::vector<NodalPlane>> nodal_planes(PlaneWaveMode k, PlaneWaveMode p, double d,
                                                    int n_first, int n_last, bool include_trivial) {
  k.validate();
  p.validate();
  if (!std::isfinite(d) || !(d > 0.0)) throw std::invalid_argument("grating period d must be positive");
  if (n_first > n_last) throw std::invalid_argument("empty nodal-plane index range");
  const double dlambda = k.wavelength() - p.wavelength();
  if (dlambda == 0.0) return std::nullopt;

  std::vector<NodalPlane> planes;
  for (int n = n_first; n <= n_last; ++n) {
    if (n == 0) {
      if (include_trivial) planes.push_back({0, 0.0, true});
      continue;
    }
    const double L = 2.0 * n * d * d / dlambda;
    if (L > 0.0) planes.push_back({n, L, false});
  }
  return planes;
}

double pair_probability_on_plane(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p,
                                 Statistics s, double L, double x, double y) {
  const PlaneProfile psi_k(g, k, L);
  const PlaneProfile psi_p(g, p, L);
  return joint_probability_generic(psi_k, psi_p, s, x, y, 0.0);
}

ScanTable pair_probability_grid(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                                const Axis& x_axis, const Axis& y_axis, unsigned threads) {
  x_axis.validate();
  y_axis.validate();
  const PlaneProfile psi_k(g, k, L);
  const PlaneProfile psi_p(g, p, L);
  const std::size_t nx = x_axis.points;
  const std::size_t ny = y_axis.points;

  // Amplitudes are cached per axis so the grid costs only the combination step.
  std::vector<ComplexAmp> kx(nx), px(nx), ky(ny), py(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    kx[i] = psi_k(x_axis.coordinate(i));
    px[i] = psi_p(x_axis.coordinate(i));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    ky[j] = psi_k(y_axis.coordinate(j));
    py[j] = psi_p(y_axis.coordinate(j));
  }

  constexpr std::size_t kCols = 4;
  std::vector<double> values(nx * ny * kCols);
  parallel_for(nx, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const ModeValues v{kx[i], ky[j], px[i], py[j]};
      double* row = &values[(i * ny + j) * kCols];
      row[0] = joint_probability(v, Statistics::Boson);
      row[1] = joint_probability(v, Statistics::Fermion);
      row[2] = joint_probability(v, Statistics::NoExchange);
      row[3] = joint_probability(v, Statistics::Distinguishable);
    }
  });
  return ScanTable({x_axis, y_axis}, {"P_boson", "P_fermion", "P_noexchange", "P_distinguishable"},
                   std::move(values));
}

ScanTable intensity_scan(const GratingSpec& g, PlaneWaveMode k, PlaneWaveMode p, double L,
                         const Axis& x_axis, unsigned threads) {
  x_axis.validate();
  const PlaneProfile psi_k(g, k, L);
  const PlaneProfile psi_p(g, p, L);
  std::vector<double> values(2 * x_axis.points);
  parallel_for(x_axis.points, threads, [&](std::size_t i) {
    const double x = x_axis.coordinate(i);
    values[2 * i] = std::norm(psi_k(x));
    values[2 * i + 1] = std::norm(psi_p(x));
  });
  return ScanTable({x_axis}, {"I_k", "I_p"}, std::move(values));
}

ComplexAmp multimode_coefficient(const GratingSpec& g, const MultiModeSpec& mm, int n, double L,
                                 const MultimodeQuadrature& q) {
  g.validate();
  mm.validate();
  require_finite(L, "L");
  const double lo = mm.k0 - 8.0 * mm.sigma;
  const double hi = mm.k0 + 8.0 * mm.sigma;
  if (!(lo > 0.0))
    throw std::invalid_argument("multimode window k0 - 8 sigma reaches k <= 0; distribution too broad");

  const double d2 = g.d * g.d;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double norm = 1.0 / (mm.sigma * std::sqrt(2.0 * kPi));
  auto integrand = [&](double k) {
    const double u = (k - mm.k0) / mm.sigma;
    const double weight = norm * std::exp(-0.5 * u * u);
    const double phase = k * L - kPi * n2 * L * (2.0 * kPi / k) / d2;
    return weight * std::polar(1.0, phase);
  };
  const auto r = integrate_complex(integrand, lo, hi, q.tol, q.budget);
  if (!r.converged)
    throw NumericalError("F_" + std::to_string(n) + " quadrature did not converge (achieved error " +
                         std::to_string(r.error_estimate) + ")");
  return r.value;
}

MultimodeProfile::MultimodeProfile(const GratingSpec& g, const MultiModeSpec& mm, double L,
                                   const MultimodeQuadrature& q)
    : d_(g.d) {
  require_normalized(g);
  for (const auto& [n, a] : g.coefficients) {
    if (a == ComplexAmp{}) continue;
    harmonics_.push_back(n);
    weights_.push_back(a * multimode_coefficient(g, mm, n, L, q));
  }
}

ComplexAmp MultimodeProfile::operator()(double x) const {
  ComplexAmp sum{};
  for (std::size_t i = 0; i < harmonics_.size(); ++i)
    sum += weights_[i] * std::polar(1.0, 2.0 * kPi * harmonics_[i] * x / d_);
  return sum;
}

ValidityReport multimode_validity(const GratingSpec& g, const MultiModeSpec& mm, double L,
                                  const ValidityThresholds& thresholds) {
  g.validate();
  mm.validate();
  const int n0 = thresholds.retained_n < 0 ? g.n_max() : thresholds.retained_n;

  double retained = 0.0;
  double worst_n2 = 0.0;
  for (const auto& [n, a] : g.coefficients) {
    if (std::abs(n) > n0 || a == ComplexAmp{}) continue;
    retained += std::norm(a);
    worst_n2 = std::max(worst_n2, static_cast<double>(n) * n);
  }
  const double d2k2 = g.d * g.d * mm.k0 * mm.k0;

  ValidityReport r;
  r.retained_fraction = {retained / g.power(), thresholds.min_retained_fraction, false};
  r.retained_fraction.pass = r.retained_fraction.value >= r.retained_fraction.threshold;
  r.phase_ratio = {kPi * worst_n2 / d2k2, thresholds.max_phase_ratio, false};
  r.phase_ratio.pass = r.phase_ratio.value <= r.phase_ratio.threshold;
  r.negative_k_mass = {0.5 * std::erfc(mm.k0 / (mm.sigma * std::numbers::sqrt2)),
                       thresholds.max_negative_mass, false};
  r.negative_k_mass.pass = r.negative_k_mass.value <= r.negative_k_mass.threshold;
  r.residual_phase = std::abs(L) * mm.sigma * kPi * worst_n2 / d2k2;
  return r;
}

}  // namespace pairwave
