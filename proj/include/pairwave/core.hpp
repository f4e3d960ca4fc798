#pragma once

#include <complex>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace pairwave {

using ComplexAmp = std::complex<double>;

/// Raised when an iterative numerical procedure cannot reach its tolerance
/// or a sampling run degenerates.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exchange statistics of a two-particle state.
///
/// Boson and Fermion carry the symmetrized / antisymmetrized amplitude.
/// NoExchange is the symmetric mean of the two product orderings with the
/// interference term dropped; Distinguishable keeps fixed labels
/// (particle k at x, particle p at y).
enum class Statistics { Boson, Fermion, Distinguishable, NoExchange };

std::string_view to_string(Statistics s);
Statistics statistics_from_string(std::string_view name);

inline bool is_identical(Statistics s) {
  return s == Statistics::Boson || s == Statistics::Fermion;
}

/// +1 for bosons, -1 for fermions. Throws for the other variants.
double exchange_sign(Statistics s);

/// Gaussian wave packet produced by a soft-edged slit, in natural units.
struct WavePacket1D {
  double k0 = 0.0;           // central wavevector
  double sigma = 1.0;        // momentum-space width
  double hbar_over_m = 1.0;  // hbar / m

  void validate() const;
  double velocity() const { return hbar_over_m * k0; }
  /// mu(t) = 2 (1 + (hbar sigma^2 t / m)^2)
  double mu(double t) const;
  /// Prefactor C(t) = pi^(-1/4) (1/sigma + i hbar sigma t / m)^(-1/2).
  ComplexAmp prefactor(double t) const;
  /// Spatial variance of |psi(x,t)|^2, mu(t) / (4 sigma^2).
  double spatial_variance(double t) const;
};

ComplexAmp packet_amplitude(const WavePacket1D& p, double x, double t);

/// (psiA(x) psiB(y) +- psiB(x) psiA(y)) / sqrt(2) for s in {Boson, Fermion}.
ComplexAmp symmetrized_amplitude(ComplexAmp psiA_at_x, ComplexAmp psiB_at_y,
                                 ComplexAmp psiB_at_x, ComplexAmp psiA_at_y,
                                 Statistics s);

/// The four single-particle amplitudes entering a two-particle probability.
struct ModeValues {
  ComplexAmp a_at_x;
  ComplexAmp a_at_y;
  ComplexAmp b_at_x;
  ComplexAmp b_at_y;
};

/// Joint detection probability from evaluated amplitudes.
///
/// Boson/Fermion: 1/2|a(x)|^2|b(y)|^2 + 1/2|b(x)|^2|a(y)|^2
///                +- Re(b*(y) a*(x) a(y) b(x)).
/// NoExchange drops the last term; Distinguishable is |a(x)|^2 |b(y)|^2.
///
/// The identical-particle cases are evaluated as 1/2 |a(x) b(y) +- b(x) a(y)|^2,
/// which expands to the expression above and cannot go negative.
double joint_probability(const ModeValues& v, Statistics s);

/// Exchange ratio P / P_NE; nullopt when P_NE vanishes.
std::optional<double> exchange_ratio(const ModeValues& v, Statistics s);

/// True when a(X) = b(X) and a(Y) = b(Y) up to one shared global phase.
bool modes_match_up_to_global_phase(const ModeValues& v, double tol = 1e-9);

template <class F>
concept AmplitudeFunction = std::regular_invocable<const F&, double, double> &&
    std::convertible_to<std::invoke_result_t<const F&, double, double>, ComplexAmp>;

template <AmplitudeFunction A, AmplitudeFunction B>
ModeValues evaluate_modes(const A& psiA, const B& psiB, double x, double y, double t) {
  return {psiA(x, t), psiA(y, t), psiB(x, t), psiB(y, t)};
}

/// Joint probability of two modes given as amplitude functions of (x, t).
template <AmplitudeFunction A, AmplitudeFunction B>
double joint_probability_generic(const A& psiA, const B& psiB, Statistics s, double x,
                                 double y, double t) {
  return joint_probability(evaluate_modes(psiA, psiB, x, y, t), s);
}

template <AmplitudeFunction A, AmplitudeFunction B>
std::optional<double> exchange_ratio(const A& psiA, const B& psiB, Statistics s, double x,
                                     double y, double t) {
  return exchange_ratio(evaluate_modes(psiA, psiB, x, y, t), s);
}

/// Amplitude-function adaptor for a Gaussian packet.
struct PacketMode {
  WavePacket1D packet;
  ComplexAmp operator()(double x, double t) const { return packet_amplitude(packet, x, t); }
};

}  // namespace pairwave
