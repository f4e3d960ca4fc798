#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pairwave {

using Density2D = std::function<double(double, double)>;

struct Rectangle {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;

  void validate() const;
  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

/// Accepted joint detections. Every pair is a double detection; the sampler
/// has no loss channel, so postselection never discards anything.
struct SampleBatch {
  std::vector<SamplePoint> pairs;
  std::uint64_t seed = 0;
  Rectangle domain;
  double acceptance_rate = 0.0;
  std::size_t proposals = 0;
  std::size_t postselected_discards = 0;
  double envelope = 0.0;
};

struct SamplerOptions {
  unsigned threads = 1;
  std::size_t probe_points = 128;
  std::size_t fallback_probe_points = 512;
  double safety_factor = 1.05;
  /// Accepted samples per random stream. Streams are keyed by
  /// (seed, chunk index), so output does not depend on the thread count.
  std::size_t chunk_size = 16384;
};

/// Maximum of P over a points x points grid spanning the domain (edges included).
double probe_maximum(const Density2D& P, const Rectangle& domain, std::size_t points,
                     unsigned threads = 1);

/// Rejection sampling of n pairs under the constant envelope
/// M = safety_factor * probe_maximum(P, 128). Each stream is a std::mt19937_64
/// seeded through std::seed_seq from (seed, chunk index); uniforms take the
/// top 53 bits of each draw. If a proposal exceeds M, the envelope is
/// re-probed on the fallback grid and the run repeated; a value above the
/// re-probed envelope throws NumericalError.
SampleBatch sample_joint(const Density2D& P, const Rectangle& domain, std::size_t n,
                         std::uint64_t seed, const SamplerOptions& options = {});

struct BinComparison {
  std::size_t ix = 0, iy = 0;
  double expected = 0.0;
  std::size_t observed = 0;
};

struct HistogramReport {
  std::vector<BinComparison> bins;
  double min_expected = 0.0;        // qualifying threshold for the deviation check
  std::size_t qualifying_bins = 0;  // bins with expected >= min_expected
  double max_relative_deviation = 0.0;
  double chi_square = 0.0;  // over bins with expected >= 5
  std::size_t degrees_of_freedom = 0;
  bool insufficient_statistics = true;

  /// (chi^2 - dof) / sqrt(2 dof)
  double chi_square_z() const;
};

/// Bins the batch on a bins_x x bins_y grid over its domain and compares with
/// expected counts N * int_bin P / int_domain P (nested adaptive quadrature).
HistogramReport histogram_compare(const SampleBatch& batch, const Density2D& P,
                                  std::size_t bins_x, std::size_t bins_y,
                                  double min_expected = 1000.0);

}  // namespace pairwave
