#pragma once

#include "pairwave/core.hpp"
#include "pairwave/scan_table.hpp"

namespace pairwave {

/// Two Gaussian-slit packets with a common width and mass scale.
struct PacketPair {
  WavePacket1D k_packet;
  WavePacket1D p_packet;

  static PacketPair make(double k0, double p0, double sigma, double hbar_over_m);
  void validate() const;
};

enum class ProbabilityScale {
  Absolute,  // the full probability density
  Reduced,   // divided by |C(t)|^4
};

/// Closed-form joint detection probability of two Gaussian-slit packets:
///
///   P / |C|^4 = 1/2 (e^A + e^B +- 2 e^{(A+B)/2} cos(2 (x - y)(k0 - p0) / mu))
///
/// with A = -2 sigma^2 ((x - v_k t)^2 + (y - v_p t)^2) / mu and B the same with
/// v_k and v_p swapped. Distinguishable gives e^A, NoExchange (e^A + e^B) / 2.
double joint_probability_closed(const PacketPair& pair, Statistics s, double x, double y,
                                double t, ProbabilityScale scale = ProbabilityScale::Absolute);

/// |C(t)|^4, the factor between absolute and reduced probabilities.
double reduced_scale_factor(const PacketPair& pair, double t);

/// Default y axis for the fixed-x scan: v_p t +- 5 packet widths, 401 points.
Axis default_slit_axis(const PacketPair& pair, double t);

/// Scan of P(x0, y, t) over y with x0 = v_k t, in reduced units.
/// Columns: P_boson, P_fermion, P_distinguishable.
ScanTable slit_scan(const PacketPair& pair, double t, const Axis& y_axis,
                       unsigned threads = 1);

}  // namespace pairwave
