#include "pairwave/runner.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "pairwave/io.hpp"
#include "pairwave/validation.hpp"

namespace pairwave {

using nlohmann::json;

namespace {

std::string render(const ScanTable& table, OutputFormat format) {
  return format == OutputFormat::Csv ? scan_table_to_csv(table) : scan_table_to_json(table).dump(2) + "\n";
}

std::string render_rows(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                        OutputFormat format) {
  if (format == OutputFormat::Csv) return rows_to_csv(header, rows);
  return json{{"header", header}, {"rows", rows}}.dump(2) + "\n";
}

json validity_json(const ValidityReport& r) {
  auto diag = [](const Diagnostic& d) { return json{{"value", d.value}, {"threshold", d.threshold}, {"pass", d.pass}}; };
  return {{"retained_fraction", diag(r.retained_fraction)},
          {"phase_ratio", diag(r.phase_ratio)},
          {"negative_k_mass", diag(r.negative_k_mass)},
          {"residual_phase", r.residual_phase},
          {"all_pass", r.all_pass()}};
}

json mode_json(PlaneWaveMode k, PlaneWaveMode p) {
  return {{"k", k.k}, {"p", p.k}, {"lambda_k", k.wavelength()}, {"lambda_p", p.wavelength()}};
}

json nodal_json(PlaneWaveMode k, PlaneWaveMode p, double d) {
  const auto planes = nodal_planes(k, p, d, -3, 3);
  if (!planes) return "none (lambda_k == lambda_p)";
  json out = json::array();
  for (const auto& pl : *planes) out.push_back({{"n", pl.n}, {"L", pl.L}});
  return out;
}

RunResult run_diffract(const RunConfig& cfg, const DiffractParams& p) {
  auto table = slit_scan(p.pair, p.t, p.y_axis, cfg.threads);
  const double factor = reduced_scale_factor(p.pair, p.t);
  if (p.scale == ProbabilityScale::Absolute) {
    std::vector<double> v = table.values();
    for (double& x : v) x *= factor;
    table = ScanTable(table.axes(), table.columns(), std::move(v));
  }
  RunResult r;
  r.payload = render(table, cfg.format);
  r.metadata["derived"] = {{"mu_t", p.pair.k_packet.mu(p.t)},
                           {"x0", p.pair.k_packet.velocity() * p.t},
                           {"v_p_t", p.pair.p_packet.velocity() * p.t},
                           {"C_t_fourth_power", factor},
                           {"packet_width", std::sqrt(p.pair.k_packet.spatial_variance(p.t))},
                           {"scale", p.scale == ProbabilityScale::Reduced ? "reduced" : "absolute"}};
  return r;
}

RunResult run_grating_pattern(const RunConfig& cfg, const GratingPatternParams& p) {
  const auto& g = p.grating.grating;
  const ScanTable table = p.y_axis ? pair_probability_grid(g, p.k, p.p, p.L, p.x_axis, *p.y_axis, cfg.threads)
                                   : intensity_scan(g, p.k, p.p, p.L, p.x_axis, cfg.threads);
  RunResult r;
  r.payload = render(table, cfg.format);
  json derived = {{"modes", mode_json(p.k, p.p)},
                  {"talbot_length_k", 2.0 * g.d * g.d / p.k.wavelength()},
                  {"talbot_length_p", 2.0 * g.d * g.d / p.p.wavelength()},
                  {"nodal_planes", nodal_json(p.k, p.p, g.d)}};
  if (p.L > 0.0) derived["phi_kp"] = phase_mismatch(p.k, p.p, g.d, p.L);
  r.metadata["derived"] = derived;
  return r;
}

RunResult run_nodal(const RunConfig& cfg, const NodalPlanesParams& p) {
  const auto planes = nodal_planes(p.k, p.p, p.d, p.n_first, p.n_last, p.include_trivial);
  std::vector<std::vector<double>> rows;
  if (planes) {
    for (const auto& pl : *planes) {
      const double cycles = pl.trivial ? 0.0 : phase_mismatch(p.k, p.p, p.d, pl.L) / (2.0 * std::numbers::pi);
      rows.push_back({static_cast<double>(pl.n), pl.L, cycles});
    }
  }
  RunResult r;
  r.payload = render_rows({"n", "L_n", "phi_kp_over_2pi"}, rows, cfg.format);
  r.metadata["derived"] = {{"modes", mode_json(p.k, p.p)},
                           {"delta_lambda", p.k.wavelength() - p.p.wavelength()},
                           {"degenerate", !planes.has_value()},
                           {"plane_count", rows.size()}};
  if (!planes) r.metadata["derived"]["note"] = "lambda_k == lambda_p: no finite nodal planes";
  return r;
}

RunResult run_correlate(const RunConfig& cfg, const CorrelateParams& p) {
  const auto& g = p.grating.grating;
  auto curve = correlation_curve(g, p.k, p.p, p.L, p.eta, p.statistics, p.method, cfg.tol, cfg.threads);
  curve.grating_id = p.grating.id;
  curve.multimode_approximation = p.multimode_sigma.has_value();
  ScanTable table = curve.to_table();

  if (p.free_reference) {
    std::vector<std::string> columns = table.columns();
    columns.push_back("C_free_boson");
    columns.push_back("C_free_fermion");
    std::vector<double> values;
    values.reserve(table.rows() * columns.size());
    for (std::size_t i = 0; i < table.rows(); ++i) {
      const double eta = p.eta.coordinate(i);
      for (double v : table.row(i)) values.push_back(v);
      values.push_back(free_correlation_reference(p.k, p.p, Statistics::Boson, eta));
      values.push_back(free_correlation_reference(p.k, p.p, Statistics::Fermion, eta));
    }
    table = ScanTable(table.axes(), std::move(columns), std::move(values));
  }

  RunResult r;
  r.payload = render(table, cfg.format);
  const CorrelationSeries series(g, p.k, p.p, p.L);
  json derived = {{"modes", mode_json(p.k, p.p)},
                  {"grating_id", curve.grating_id},
                  {"direct_terms", series.direct_terms().size()},
                  {"crossed_terms", series.crossed_terms().size()},
                  {"multimode_approximation", curve.multimode_approximation}};
  if (p.L > 0.0) derived["phi_kp"] = phase_mismatch(p.k, p.p, g.d, p.L);
  if (p.multimode_sigma) {
    derived["multimode_note"] =
        "plane-wave closed form evaluated at the central wavevectors; the common factor I(k0) cancels "
        "and multimode amplitudes are unnormalized";
    derived["validity_k"] = validity_json(multimode_validity(g, MultiModeSpec{p.k.k, *p.multimode_sigma}, p.L));
    derived["validity_p"] = validity_json(multimode_validity(g, MultiModeSpec{p.p.k, *p.multimode_sigma}, p.L));
  }
  r.metadata["derived"] = derived;
  return r;
}

RunResult run_sample(const RunConfig& cfg, const SampleParams& p) {
  Density2D density;
  if (const auto* dd = std::get_if<DiffractDensity>(&p.density)) {
    density = [d = *dd](double x, double y) {
      return joint_probability_closed(d.pair, d.statistics, x, y, d.t, ProbabilityScale::Reduced);
    };
  } else {
    const auto& gd = std::get<GratingDensity>(p.density);
    density = [psi_k = PlaneProfile(gd.grating.grating, gd.k, gd.L),
               psi_p = PlaneProfile(gd.grating.grating, gd.p, gd.L), s = gd.statistics](double x, double y) {
      return joint_probability_generic(psi_k, psi_p, s, x, y, 0.0);
    };
  }
  SamplerOptions opt;
  opt.threads = cfg.threads;
  const auto batch = sample_joint(density, p.domain, p.n, cfg.seed, opt);

  std::vector<std::vector<double>> rows;
  rows.reserve(batch.pairs.size());
  for (const auto& s : batch.pairs) rows.push_back({s.x, s.y});

  RunResult r;
  r.payload = render_rows({"x", "y"}, rows, cfg.format);
  json derived = {{"acceptance_rate", batch.acceptance_rate},
                  {"proposals", batch.proposals},
                  {"postselected_discards", batch.postselected_discards},
                  {"envelope", batch.envelope},
                  {"generator", "std::mt19937_64 per chunk, std::seed_seq(seed, chunk), chunk 16384, 53-bit uniforms"}};
  if (p.histogram) {
    const auto h = histogram_compare(batch, density, p.histogram->bins_x, p.histogram->bins_y,
                                     p.histogram->min_expected);
    derived["histogram"] = {{"qualifying_bins", h.qualifying_bins},
                            {"max_relative_deviation", h.max_relative_deviation},
                            {"chi_square", h.chi_square},
                            {"degrees_of_freedom", h.degrees_of_freedom},
                            {"insufficient_statistics", h.insufficient_statistics}};
  }
  r.metadata["derived"] = derived;
  return r;
}

RunResult run_validate(const RunConfig& cfg, const ValidateParams& p) {
  const auto checks = run_validation_suite({cfg.threads, p.include_sampling, cfg.seed});
  bool all = true;
  RunResult r;
  if (cfg.format == OutputFormat::Csv) {
    std::string out = "check,passed,measured,tolerance\n";
    for (const auto& c : checks) {
      out += c.name + "," + (c.passed ? "1" : "0") + "," + format_double(c.measured) + "," +
             format_double(c.tolerance) + "\n";
      all = all && c.passed;
    }
    r.payload = out;
  } else {
    json list = json::array();
    for (const auto& c : checks) {
      list.push_back({{"check", c.name}, {"passed", c.passed}, {"measured", c.measured},
                      {"tolerance", c.tolerance}, {"detail", c.detail}});
      all = all && c.passed;
    }
    r.payload = list.dump(2) + "\n";
  }
  r.metadata["derived"] = {{"checks", checks.size()}, {"all_passed", all}};
  r.exit_code = all ? kExitOk : kExitNumerical;
  return r;
}

}  // namespace

RunResult execute(const RunConfig& cfg) {
  RunResult r = std::visit(
      [&](const auto& p) -> RunResult {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DiffractParams>) return run_diffract(cfg, p);
        else if constexpr (std::is_same_v<T, GratingPatternParams>) return run_grating_pattern(cfg, p);
        else if constexpr (std::is_same_v<T, NodalPlanesParams>) return run_nodal(cfg, p);
        else if constexpr (std::is_same_v<T, CorrelateParams>) return run_correlate(cfg, p);
        else if constexpr (std::is_same_v<T, SampleParams>) return run_sample(cfg, p);
        else return run_validate(cfg, p);
      },
      cfg.params);
  r.metadata["tool"] = kToolVersion;
  r.metadata["kind"] = to_string(cfg.kind);
  r.metadata["config"] = config_to_json(cfg);
  return r;
}

int run(const RunConfig& cfg) {
  const RunResult r = execute(cfg);
  if (!cfg.out_path) {
    std::cout << r.payload;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return r.exit_code;
  }
  write_file_atomic(*cfg.out_path, r.payload);
  write_file_atomic(*cfg.out_path + ".meta.json", r.metadata.dump(2) + "\n");
  return r.exit_code;
}

}  // namespace pairwave
