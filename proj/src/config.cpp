#include "pairwave/config.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace pairwave {

using nlohmann::json;

namespace {

/// Typed access to one JSON object; finish() rejects keys never read.
class Section {
 public:
  Section(const json& obj, std::string context) : obj_(obj), ctx_(std::move(context)) {
    if (!obj_.is_object()) fail("must be an object");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(ctx_ + ": " + what); }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!obj_.contains(key)) fail("missing required key '" + key + "'");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) fail("'" + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail("'" + key + "' must be finite");
    return d;
  }

  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  double positive(const std::string& key) {
    const double v = number(key);
    if (!(v > 0.0)) fail("'" + key + "' must be positive");
    return v;
  }

  double non_negative(const std::string& key) {
    const double v = number(key);
    if (v < 0.0) fail("'" + key + "' must be non-negative");
    return v;
  }

  std::int64_t integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      fail("'" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) fail("'" + key + "' must be a boolean");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) fail("'" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  Section child(const std::string& key) { return Section(raw(key), ctx_ + "." + key); }

  const std::string& context() const { return ctx_; }

  void finish() const {
    for (const auto& [key, value] : obj_.items())
      if (!used_.count(key)) fail("unknown key '" + key + "'");
  }

 private:
  const json& obj_;
  std::string ctx_;
  std::set<std::string> used_;
};

template <class F>
auto guarded(const std::string& ctx, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

Axis parse_axis(Section s, const std::string& name) {
  Axis a{name, s.number("min"), s.number("max"), 0, "length"};
  const auto points = s.unsigned_integer("points");
  if (points == 0 || points > 100'000'000) s.fail("'points' must be in [1, 1e8]");
  a.points = static_cast<std::size_t>(points);
  s.finish();
  guarded(s.context(), [&] { a.validate(); return 0; });
  return a;
}

std::optional<Axis> parse_optional_axis(Section& parent, const std::string& key, const std::string& name) {
  if (!parent.has(key)) return std::nullopt;
  return parse_axis(parent.child(key), name);
}

PacketPair parse_packet_pair(Section& s) {
  const double k0 = s.number("k0");
  const double p0 = s.number("p0");
  if (s.has("sigma") == s.has("sigma2")) s.fail("give exactly one of 'sigma' or 'sigma2'");
  const double sigma = s.has("sigma") ? s.positive("sigma") : std::sqrt(s.positive("sigma2"));
  const double hbar_over_m = s.has("hbar_over_m") ? s.positive("hbar_over_m") : 1.0;
  return guarded(s.context(), [&] { return PacketPair::make(k0, p0, sigma, hbar_over_m); });
}

ComplexAmp parse_complex(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(ctx + ": complex numbers are two-element arrays [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

GratingInput parse_grating(Section s) {
  GratingSpec g;
  g.d = s.positive("d");
  const json& list = s.raw("coefficients");
  if (!list.is_array() || list.empty()) s.fail("'coefficients' must be a non-empty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    Section c(list[i], s.context() + ".coefficients[" + std::to_string(i) + "]");
    const auto n = c.integer("n");
    if (std::abs(n) > 64) c.fail("harmonic index |n| must be <= 64");
    const ComplexAmp a = parse_complex(c.raw("A"), c.context());
    c.finish();
    if (!g.coefficients.emplace(static_cast<int>(n), a).second)
      c.fail("duplicate harmonic index " + std::to_string(n));
  }
  const bool normalize = s.boolean("normalize", true);
  GratingInput out{g, s.string("id", "grating")};
  s.finish();
  guarded(s.context(), [&] {
    out.grating.validate();
    if (normalize) {
      out.grating = normalize_coefficients(out.grating);
    } else if (!out.grating.is_normalized(1e-10)) {
      throw ConfigError(s.context() + ": coefficients are not normalized and 'normalize' is false");
    }
    return 0;
  });
  return out;
}

std::pair<PlaneWaveMode, PlaneWaveMode> parse_modes(Section s) {
  const bool by_k = s.has("k") || s.has("p");
  const bool by_lambda = s.has("lambda_k") || s.has("lambda_p");
  if (by_k == by_lambda) s.fail("give either 'k'/'p' or 'lambda_k'/'lambda_p'");
  std::pair<PlaneWaveMode, PlaneWaveMode> out;
  if (by_k) {
    out = {PlaneWaveMode{s.positive("k")}, PlaneWaveMode{s.positive("p")}};
  } else {
    out = {PlaneWaveMode::from_wavelength(s.positive("lambda_k")),
           PlaneWaveMode::from_wavelength(s.positive("lambda_p"))};
  }
  s.finish();
  return out;
}

Statistics parse_statistics(Section& s, const std::string& key) {
  return guarded(s.context(), [&] { return statistics_from_string(s.string(key)); });
}

DiffractParams parse_diffract(Section& s) {
  DiffractParams p;
  p.pair = parse_packet_pair(s);
  p.t = s.non_negative("t");
  p.y_axis = parse_optional_axis(s, "y_grid", "y").value_or(default_slit_axis(p.pair, p.t));
  const auto scale = s.string("scale", "reduced");
  if (scale == "reduced") p.scale = ProbabilityScale::Reduced;
  else if (scale == "absolute") p.scale = ProbabilityScale::Absolute;
  else s.fail("'scale' must be \"reduced\" or \"absolute\"");
  return p;
}

GratingPatternParams parse_grating_pattern(Section& s) {
  GratingPatternParams p;
  p.grating = parse_grating(s.child("grating"));
  std::tie(p.k, p.p) = parse_modes(s.child("modes"));
  p.L = s.non_negative("L");
  p.x_axis = parse_optional_axis(s, "x_grid", "x").value_or(Axis{"x", 0.0, p.grating.grating.d, 129, "length"});
  p.y_axis = parse_optional_axis(s, "y_grid", "y");
  return p;
}

NodalPlanesParams parse_nodal(Section& s) {
  NodalPlanesParams p;
  p.d = s.positive("d");
  std::tie(p.k, p.p) = parse_modes(s.child("modes"));
  if (s.has("n_range")) {
    const json& r = s.raw("n_range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      s.fail("'n_range' must be [first, last] integers");
    p.n_first = r[0].get<int>();
    p.n_last = r[1].get<int>();
  } else {
    p.n_first = -5;
    p.n_last = 5;
  }
  if (p.n_first > p.n_last) s.fail("'n_range' is empty");
  if (static_cast<long>(p.n_last) - p.n_first > 1'000'000) s.fail("'n_range' is too wide");
  p.include_trivial = s.boolean("include_trivial", false);
  return p;
}

CorrelateParams parse_correlate(Section& s) {
  CorrelateParams p;
  p.grating = parse_grating(s.child("grating"));
  std::tie(p.k, p.p) = parse_modes(s.child("modes"));
  p.L = s.non_negative("L");
  p.eta = parse_optional_axis(s, "eta_grid", "eta").value_or(default_eta_axis(p.grating.grating.d));
  const auto method = s.string("method", "closed");
  if (method == "closed") p.method = CorrelationMethod::Closed;
  else if (method == "numeric") p.method = CorrelationMethod::Numeric;
  else s.fail("'method' must be \"closed\" or \"numeric\"");
  if (s.has("statistics")) {
    const json& list = s.raw("statistics");
    if (!list.is_array() || list.empty()) s.fail("'statistics' must be a non-empty array");
    for (const auto& v : list) {
      if (!v.is_string()) s.fail("'statistics' entries must be strings");
      const auto st = guarded(s.context(), [&] { return statistics_from_string(v.get<std::string>()); });
      if (st == Statistics::Distinguishable && p.method == CorrelationMethod::Closed)
        s.fail("closed-form correlation does not support distinguishable statistics");
      p.statistics.push_back(st);
    }
  } else {
    p.statistics = {Statistics::Boson, Statistics::Fermion};
  }
  p.free_reference = s.boolean("free_reference", true);
  if (s.has("multimode")) {
    Section mm = s.child("multimode");
    p.multimode_sigma = mm.positive("sigma");
    mm.finish();
  }
  return p;
}

SampleParams parse_sample(Section& s) {
  SampleParams p;
  Section d = s.child("density");
  const auto source = d.string("source");
  if (source == "diffract") {
    DiffractDensity dd;
    dd.pair = parse_packet_pair(d);
    dd.t = d.non_negative("t");
    dd.statistics = parse_statistics(d, "statistics");
    p.density = dd;
  } else if (source == "grating") {
    GratingDensity gd;
    gd.grating = parse_grating(d.child("grating"));
    std::tie(gd.k, gd.p) = parse_modes(d.child("modes"));
    gd.L = d.non_negative("L");
    gd.statistics = parse_statistics(d, "statistics");
    p.density = gd;
  } else {
    d.fail("'source' must be \"diffract\" or \"grating\"");
  }
  d.finish();

  Section dom = s.child("domain");
  auto range = [&](const std::string& key) {
    const json& r = dom.raw(key);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
      dom.fail("'" + key + "' must be [min, max]");
    return std::pair{r[0].get<double>(), r[1].get<double>()};
  };
  std::tie(p.domain.x_min, p.domain.x_max) = range("x");
  std::tie(p.domain.y_min, p.domain.y_max) = range("y");
  dom.finish();
  guarded(dom.context(), [&] { p.domain.validate(); return 0; });

  const auto n = s.unsigned_integer("n");
  if (n == 0 || n > 1'000'000'000) s.fail("'n' must be in [1, 1e9]");
  p.n = static_cast<std::size_t>(n);

  if (s.has("histogram")) {
    Section h = s.child("histogram");
    HistogramSpec spec;
    if (h.has("bins")) {
      const json& b = h.raw("bins");
      auto count = [](const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; };
      if (!b.is_array() || b.size() != 2 || !count(b[0]) || !count(b[1]))
        h.fail("'bins' must be [bins_x, bins_y]");
      spec.bins_x = b[0].get<std::size_t>();
      spec.bins_y = b[1].get<std::size_t>();
      if (spec.bins_x < 2 || spec.bins_y < 2) h.fail("histogram needs at least 2 bins per axis");
    }
    spec.min_expected = h.number("min_expected", spec.min_expected);
    h.finish();
    p.histogram = spec;
  }
  return p;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Diffract: return "diffract";
    case ExperimentKind::GratingPattern: return "grating-pattern";
    case ExperimentKind::NodalPlanes: return "nodal-planes";
    case ExperimentKind::Correlate: return "correlate";
    case ExperimentKind::Sample: return "sample";
    case ExperimentKind::Validate: return "validate";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (auto k : {ExperimentKind::Diffract, ExperimentKind::GratingPattern, ExperimentKind::NodalPlanes,
                 ExperimentKind::Correlate, ExperimentKind::Sample, ExperimentKind::Validate})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

RunConfig parse_config(const json& doc, std::optional<ExperimentKind> subcommand) {
  Section s(doc, "config");
  RunConfig cfg;
  if (s.has("kind")) {
    cfg.kind = experiment_kind_from_string(s.string("kind"));
    if (subcommand && *subcommand != cfg.kind)
      s.fail("kind '" + to_string(cfg.kind) + "' does not match subcommand '" + to_string(*subcommand) + "'");
  } else if (subcommand) {
    cfg.kind = *subcommand;
  } else {
    s.fail("missing 'kind'");
  }

  if (s.has("output")) {
    Section o = s.child("output");
    if (o.has("path")) cfg.out_path = o.string("path");
    const auto fmt = o.string("format", "csv");
    if (fmt == "csv") cfg.format = OutputFormat::Csv;
    else if (fmt == "json") cfg.format = OutputFormat::Json;
    else o.fail("'format' must be \"csv\" or \"json\"");
    o.finish();
  }
  if (s.has("tol")) cfg.tol = s.positive("tol");
  if (s.has("seed")) cfg.seed = s.unsigned_integer("seed");
  if (s.has("threads")) {
    const auto t = s.unsigned_integer("threads");
    if (t == 0 || t > 1024) s.fail("'threads' must be in [1, 1024]");
    cfg.threads = static_cast<unsigned>(t);
  }

  switch (cfg.kind) {
    case ExperimentKind::Diffract: cfg.params = parse_diffract(s); break;
    case ExperimentKind::GratingPattern: cfg.params = parse_grating_pattern(s); break;
    case ExperimentKind::NodalPlanes: cfg.params = parse_nodal(s); break;
    case ExperimentKind::Correlate: cfg.params = parse_correlate(s); break;
    case ExperimentKind::Sample: cfg.params = parse_sample(s); break;
    case ExperimentKind::Validate: cfg.params = ValidateParams{s.boolean("include_sampling", true)}; break;
  }
  s.finish();
  return cfg;
}

namespace {

json grid_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"points", a.points}}; }

json grating_json(const GratingInput& g) {
  json coeffs = json::array();
  for (const auto& [n, a] : g.grating.coefficients) coeffs.push_back({{"n", n}, {"A", {a.real(), a.imag()}}});
  return {{"d", g.grating.d}, {"coefficients", coeffs}, {"normalize", false}, {"id", g.id}};
}

json modes_json(PlaneWaveMode k, PlaneWaveMode p) { return {{"k", k.k}, {"p", p.k}}; }

void put_packet(json& j, const PacketPair& pair) {
  j["k0"] = pair.k_packet.k0;
  j["p0"] = pair.p_packet.k0;
  j["sigma"] = pair.k_packet.sigma;
  j["hbar_over_m"] = pair.k_packet.hbar_over_m;
}

}  // namespace

json config_to_json(const RunConfig& cfg) {
  json j;
  j["kind"] = to_string(cfg.kind);
  json output = {{"format", cfg.format == OutputFormat::Csv ? "csv" : "json"}};
  if (cfg.out_path) output["path"] = *cfg.out_path;
  j["output"] = output;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;

  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DiffractParams>) {
          put_packet(j, p.pair);
          j["t"] = p.t;
          j["y_grid"] = grid_json(p.y_axis);
          j["scale"] = p.scale == ProbabilityScale::Reduced ? "reduced" : "absolute";
        } else if constexpr (std::is_same_v<T, GratingPatternParams>) {
          j["grating"] = grating_json(p.grating);
          j["modes"] = modes_json(p.k, p.p);
          j["L"] = p.L;
          j["x_grid"] = grid_json(p.x_axis);
          if (p.y_axis) j["y_grid"] = grid_json(*p.y_axis);
        } else if constexpr (std::is_same_v<T, NodalPlanesParams>) {
          j["d"] = p.d;
          j["modes"] = modes_json(p.k, p.p);
          j["n_range"] = {p.n_first, p.n_last};
          j["include_trivial"] = p.include_trivial;
        } else if constexpr (std::is_same_v<T, CorrelateParams>) {
          j["grating"] = grating_json(p.grating);
          j["modes"] = modes_json(p.k, p.p);
          j["L"] = p.L;
          j["eta_grid"] = grid_json(p.eta);
          j["method"] = p.method == CorrelationMethod::Closed ? "closed" : "numeric";
          json stats = json::array();
          for (auto s : p.statistics) stats.push_back(std::string(to_string(s)));
          j["statistics"] = stats;
          j["free_reference"] = p.free_reference;
          if (p.multimode_sigma) j["multimode"] = {{"sigma", *p.multimode_sigma}};
        } else if constexpr (std::is_same_v<T, SampleParams>) {
          json density;
          if (const auto* dd = std::get_if<DiffractDensity>(&p.density)) {
            density["source"] = "diffract";
            put_packet(density, dd->pair);
            density["t"] = dd->t;
            density["statistics"] = std::string(to_string(dd->statistics));
          } else {
            const auto& gd = std::get<GratingDensity>(p.density);
            density["source"] = "grating";
            density["grating"] = grating_json(gd.grating);
            density["modes"] = modes_json(gd.k, gd.p);
            density["L"] = gd.L;
            density["statistics"] = std::string(to_string(gd.statistics));
          }
          j["density"] = density;
          j["domain"] = {{"x", {p.domain.x_min, p.domain.x_max}}, {"y", {p.domain.y_min, p.domain.y_max}}};
          j["n"] = p.n;
          if (p.histogram)
            j["histogram"] = {{"bins", {p.histogram->bins_x, p.histogram->bins_y}},
                              {"min_expected", p.histogram->min_expected}};
        } else {
          j["include_sampling"] = p.include_sampling;
        }
      },
      cfg.params);
  return j;
}

}  // namespace pairwave
