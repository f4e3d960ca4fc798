#include "pairwave/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "pairwave/core.hpp"
#include "pairwave/parallel.hpp"
#include "pairwave/quadrature.hpp"

namespace pairwave {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

struct ChunkResult {
  std::vector<SamplePoint> pairs;
  std::size_t proposals = 0;
  double worst_excess = 0.0;  // max P seen above the envelope, 0 if none
};

constexpr std::size_t kMinProposalsForRateCheck = 1'000'000;
constexpr double kMinAcceptanceRate = 1e-4;

ChunkResult run_chunk(const Density2D& P, const Rectangle& dom, double envelope, std::size_t target,
                      std::uint64_t seed, std::uint64_t chunk) {
  ChunkResult out;
  out.pairs.reserve(target);
  auto rng = stream(seed, chunk);
  const double wx = dom.x_max - dom.x_min;
  const double wy = dom.y_max - dom.y_min;
  while (out.pairs.size() < target) {
    const double x = dom.x_min + wx * unit_uniform(rng);
    const double y = dom.y_min + wy * unit_uniform(rng);
    const double u = unit_uniform(rng);
    ++out.proposals;
    const double p = P(x, y);
    if (!(p >= 0.0)) throw std::invalid_argument("density is negative or NaN at a sampled point");
    if (p > envelope) out.worst_excess = std::max(out.worst_excess, p);
    if (u * envelope < p) out.pairs.push_back({x, y});
    if (out.proposals >= kMinProposalsForRateCheck &&
        static_cast<double>(out.pairs.size()) < kMinAcceptanceRate * static_cast<double>(out.proposals))
      throw NumericalError("rejection sampling acceptance rate below 1e-4 after " +
                           std::to_string(out.proposals) + " proposals");
  }
  return out;
}

SampleBatch run_all(const Density2D& P, const Rectangle& dom, std::size_t n, std::uint64_t seed,
                    double envelope, const SamplerOptions& opt, double& worst_excess) {
  const std::size_t chunk = std::max<std::size_t>(1, opt.chunk_size);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<ChunkResult> results(chunks);
  parallel_for(chunks, opt.threads, [&](std::size_t c) {
    const std::size_t target = std::min(chunk, n - c * chunk);
    results[c] = run_chunk(P, dom, envelope, target, seed, c);
  });

  SampleBatch batch;
  batch.seed = seed;
  batch.domain = dom;
  batch.envelope = envelope;
  batch.pairs.reserve(n);
  worst_excess = 0.0;
  for (auto& r : results) {
    batch.pairs.insert(batch.pairs.end(), r.pairs.begin(), r.pairs.end());
    batch.proposals += r.proposals;
    worst_excess = std::max(worst_excess, r.worst_excess);
  }
  batch.acceptance_rate = static_cast<double>(batch.pairs.size()) / static_cast<double>(batch.proposals);
  return batch;
}

}  // namespace

void Rectangle::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
    throw std::invalid_argument("sampling domain bounds must be finite");
  if (!(x_min < x_max) || !(y_min < y_max)) throw std::invalid_argument("sampling domain is empty");
}

double probe_maximum(const Density2D& P, const Rectangle& dom, std::size_t points, unsigned threads) {
  dom.validate();
  if (points < 2) throw std::invalid_argument("probe grid needs at least 2 points per axis");
  std::vector<double> row_max(points, 0.0);
  parallel_for(points, threads, [&](std::size_t i) {
    const double x = dom.x_min + (dom.x_max - dom.x_min) * static_cast<double>(i) / (points - 1);
    double m = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
      const double y = dom.y_min + (dom.y_max - dom.y_min) * static_cast<double>(j) / (points - 1);
      m = std::max(m, P(x, y));
    }
    row_max[i] = m;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

SampleBatch sample_joint(const Density2D& P, const Rectangle& domain, std::size_t n,
                         std::uint64_t seed, const SamplerOptions& options) {
  domain.validate();
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(options.safety_factor >= 1.0)) throw std::invalid_argument("safety factor must be >= 1");

  const double peak = probe_maximum(P, domain, options.probe_points, options.threads);
  if (!(peak > 0.0) || !std::isfinite(peak))
    throw std::invalid_argument("density is degenerate (maximum on probe grid is not positive)");

  double worst = 0.0;
  auto batch = run_all(P, domain, n, seed, options.safety_factor * peak, options, worst);
  if (worst > 0.0) {
    const double fine = probe_maximum(P, domain, options.fallback_probe_points, options.threads);
    const double envelope = options.safety_factor * fine;
    if (worst > envelope)
      throw NumericalError("density exceeds the re-probed envelope; probe grid under-resolves P");
    batch = run_all(P, domain, n, seed, envelope, options, worst);
    if (worst > 0.0) throw NumericalError("density exceeds the re-probed envelope");
  }
  return batch;
}

double HistogramReport::chi_square_z() const {
  if (degrees_of_freedom == 0) return 0.0;
  const double dof = static_cast<double>(degrees_of_freedom);
  return (chi_square - dof) / std::sqrt(2.0 * dof);
}

HistogramReport histogram_compare(const SampleBatch& batch, const Density2D& P, std::size_t bins_x,
                                  std::size_t bins_y, double min_expected) {
  if (bins_x < 2 || bins_y < 2) throw std::invalid_argument("histogram needs at least 2 bins per axis");
  const Rectangle& dom = batch.domain;
  dom.validate();
  const double hx = (dom.x_max - dom.x_min) / static_cast<double>(bins_x);
  const double hy = (dom.y_max - dom.y_min) / static_cast<double>(bins_y);

  std::vector<std::size_t> counts(bins_x * bins_y, 0);
  for (const auto& s : batch.pairs) {
    const auto ix = std::min(bins_x - 1, static_cast<std::size_t>((s.x - dom.x_min) / hx));
    const auto iy = std::min(bins_y - 1, static_cast<std::size_t>((s.y - dom.y_min) / hy));
    ++counts[ix * bins_y + iy];
  }

  const double scale = probe_maximum(P, dom, 64) * hx * hy;
  const double tol = std::max(1e-10 * scale, 1e-300);
  std::vector<double> mass(bins_x * bins_y);
  for (std::size_t ix = 0; ix < bins_x; ++ix) {
    for (std::size_t iy = 0; iy < bins_y; ++iy) {
      const double x0 = dom.x_min + ix * hx, y0 = dom.y_min + iy * hy;
      auto inner = [&](double x) {
        return require_converged(integrate([&](double y) { return P(x, y); }, y0, y0 + hy, tol / hx),
                                 "histogram bin (inner)")
            .value;
      };
      mass[ix * bins_y + iy] = require_converged(integrate(inner, x0, x0 + hx, tol), "histogram bin").value;
    }
  }
  double total = 0.0;
  for (double m : mass) total += m;
  if (!(total > 0.0)) throw std::invalid_argument("density has no mass on the histogram domain");

  HistogramReport report;
  report.min_expected = min_expected;
  const double N = static_cast<double>(batch.pairs.size());
  std::size_t chi_bins = 0;
  for (std::size_t ix = 0; ix < bins_x; ++ix) {
    for (std::size_t iy = 0; iy < bins_y; ++iy) {
      const std::size_t b = ix * bins_y + iy;
      const double expected = N * mass[b] / total;
      report.bins.push_back({ix, iy, expected, counts[b]});
      const double observed = static_cast<double>(counts[b]);
      if (expected >= 5.0) {
        report.chi_square += (observed - expected) * (observed - expected) / expected;
        ++chi_bins;
      }
      if (expected >= min_expected) {
        ++report.qualifying_bins;
        report.max_relative_deviation =
            std::max(report.max_relative_deviation, std::abs(observed - expected) / expected);
      }
    }
  }
  report.degrees_of_freedom = chi_bins > 0 ? chi_bins - 1 : 0;
  report.insufficient_statistics = report.qualifying_bins == 0;
  return report;
}

}  // namespace pairwave
