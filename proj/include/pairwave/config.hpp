#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pairwave/correlation.hpp"
#include "pairwave/diffraction.hpp"
#include "pairwave/grating.hpp"
#include "pairwave/sampling.hpp"

namespace pairwave {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { Diffract, GratingPattern, NodalPlanes, Correlate, Sample, Validate };
enum class OutputFormat { Csv, Json };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct DiffractParams {
  PacketPair pair;
  double t = 0.0;
  Axis y_axis;
  ProbabilityScale scale = ProbabilityScale::Reduced;
};

struct GratingInput {
  GratingSpec grating;  // normalized
  std::string id;
};

struct GratingPatternParams {
  GratingInput grating;
  PlaneWaveMode k, p;
  double L = 0.0;
  Axis x_axis;
  std::optional<Axis> y_axis;  // present: pair-probability grid
};

struct NodalPlanesParams {
  double d = 1.0;
  PlaneWaveMode k, p;
  int n_first = 1;
  int n_last = 1;
  bool include_trivial = false;
};

struct CorrelateParams {
  GratingInput grating;
  PlaneWaveMode k, p;
  double L = 0.0;
  Axis eta;
  CorrelationMethod method = CorrelationMethod::Closed;
  std::vector<Statistics> statistics;
  bool free_reference = true;
  std::optional<double> multimode_sigma;
};

struct DiffractDensity {
  PacketPair pair;
  double t = 0.0;
  Statistics statistics = Statistics::Boson;
};

struct GratingDensity {
  GratingInput grating;
  PlaneWaveMode k, p;
  double L = 0.0;
  Statistics statistics = Statistics::Fermion;
};

struct HistogramSpec {
  std::size_t bins_x = 8;
  std::size_t bins_y = 8;
  double min_expected = 1000.0;
};

struct SampleParams {
  std::variant<DiffractDensity, GratingDensity> density;
  Rectangle domain;
  std::size_t n = 0;
  std::optional<HistogramSpec> histogram;
};

struct ValidateParams {
  bool include_sampling = true;
};

using ExperimentParams = std::variant<DiffractParams, GratingPatternParams, NodalPlanesParams,
                                      CorrelateParams, SampleParams, ValidateParams>;

struct RunConfig {
  ExperimentKind kind = ExperimentKind::Validate;
  ExperimentParams params = ValidateParams{};
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::Csv;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Parses and validates a configuration document. Unknown keys, wrong
/// types and out-of-range values raise ConfigError. When `subcommand` is
/// given, a "kind" key in the document must agree with it.
RunConfig parse_config(const nlohmann::json& doc, std::optional<ExperimentKind> subcommand);

/// Fully resolved configuration (defaults filled in); parsing it yields the
/// same RunConfig.
nlohmann::json config_to_json(const RunConfig& config);

}  // namespace pairwave
