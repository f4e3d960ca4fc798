// Command-line front end: one subcommand per experiment kind.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairwave/config.hpp"
#include "pairwave/io.hpp"
#include "pairwave/runner.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::optional<unsigned long long> seed;
  std::optional<unsigned> threads;
  bool skip_sampling = false;
};

void add_common(CLI::App* sub, Overrides& o, bool config_required) {
  auto* c = sub->add_option("--config", o.config_path, "JSON configuration file");
  if (config_required) c->required();
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", o.tol, "numerical tolerance");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--threads", o.threads, "worker threads");
}

int dispatch(const std::string& name, const Overrides& o) {
  using namespace pairwave;
  nlohmann::json doc = nlohmann::json::object();
  if (!o.config_path.empty()) {
    try {
      doc = nlohmann::json::parse(read_file(o.config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  const auto kind = experiment_kind_from_string(name);
  if (!doc.contains("kind")) doc["kind"] = name;
  if (!o.out.empty() || !o.format.empty()) {
    auto& out = doc["output"];
    if (out.is_null()) out = nlohmann::json::object();
    if (!o.out.empty()) out["path"] = o.out;
    if (!o.format.empty()) out["format"] = o.format;
  }
  if (o.tol) doc["tol"] = *o.tol;
  if (o.seed) doc["seed"] = *o.seed;
  if (o.threads) doc["threads"] = *o.threads;
  if (o.skip_sampling) doc["include_sampling"] = false;
  return run(parse_config(doc, kind));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-particle exchange interference in diffraction and grating propagation"};
  app.set_version_flag("--version", std::string(pairwave::kToolVersion));
  app.require_subcommand(1);

  Overrides o;
  std::string chosen;
  const std::pair<const char*, const char*> commands[] = {
      {"diffract", "pair probability behind a single slit"},
      {"grating-pattern", "propagated grating intensity or pair probability"},
      {"nodal-planes", "distances where the two modes are phase matched"},
      {"correlate", "two-point correlation along the grating plane"},
      {"sample", "draw detection pairs from a joint probability"},
      {"validate", "run the built-in consistency checks"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    const bool is_validate = std::string(name) == "validate";
    add_common(sub, o, !is_validate);
    if (is_validate) sub->add_flag("--skip-sampling", o.skip_sampling, "omit the Monte Carlo check");
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pairwave::kExitConfig;
  }

  try {
    return dispatch(chosen, o);
  } catch (const pairwave::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return pairwave::kExitIo;
  } catch (const pairwave::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return pairwave::kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return pairwave::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pairwave::kExitNumerical;
  }
}
