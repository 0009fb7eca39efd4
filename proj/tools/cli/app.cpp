#include "app.hpp"

#include <Eigen/Core>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "chaoslab/errors.hpp"
#include "chaoslab/fft.hpp"
#include "chaoslab/version.hpp"
#include "cli.hpp"

namespace chaoslab::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  bool optional = false;  // section markers: applied only when a flag of that name exists
};

struct ConfigFile {
  std::optional<std::string> subcommand;
  std::vector<ConfigEntry> entries;
};

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += value_text(v[i]);
    }
    return s;
  }
  throw UsageError("config: unsupported value " + v.dump());
}

// Nested objects contribute their keys directly; the object key itself acts
// as a flag when one of that name exists.
void flatten(const json& obj, std::vector<ConfigEntry>& out) {
  for (const auto& [k, v] : obj.items()) {
    if (v.is_object()) {
      out.push_back({k, "true", true});
      flatten(v, out);
    } else {
      out.push_back({k, value_text(v)});
    }
  }
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  ConfigFile cfg;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw UsageError("config '" + path + "': " + e.what());
    }
    if (j.contains("subcommand") && j.contains("config")) {
      cfg.subcommand = j.at("subcommand").get<std::string>();
      flatten(j.at("config"), cfg.entries);
    } else {
      flatten(j, cfg.entries);
    }
    return cfg;
  }
  std::istringstream is(text);
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(is)) {
    if (item.name == "++" || item.name == "--") continue;
    std::string v;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) {
      if (i) v += ',';
      v += item.inputs[i];
    }
    cfg.entries.push_back({item.name, v});
  }
  return cfg;
}

// Values given on the command line take precedence over the file.
void apply_config(const ConfigFile& cfg, CLI::App& sub, CLI::App& root) {
  if (cfg.subcommand && *cfg.subcommand != sub.get_name())
    throw UsageError("config was written by '" + *cfg.subcommand + "', not '" + sub.get_name() + "'");
  for (const ConfigEntry& e : cfg.entries) {
    std::string key = e.key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "config" || key == "help") throw UsageError("config key '" + e.key + "' is not allowed");
    CLI::Option* o = sub.get_option_no_throw("--" + key);
    if (!o) o = root.get_option_no_throw("--" + key);
    if (!o) {
      if (e.optional) continue;
      throw UsageError("unknown config key '" + e.key + "' for '" + sub.get_name() + "'");
    }
    if (o->count() > 0) continue;
    o->add_result(e.value);
    o->run_callback();
  }
}

json library_versions() {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  std::ostringstream nl;
  nl << NLOHMANN_JSON_VERSION_MAJOR << '.' << NLOHMANN_JSON_VERSION_MINOR << '.' << NLOHMANN_JSON_VERSION_PATCH;
  return {{"eigen", eigen.str()}, {"nlohmann_json", nl.str()}, {"cli11", CLI11_VERSION},
          {"fft", fft::backend_version()}};
}

std::string default_output_dir() {
  const char* env = std::getenv("CHAOSLAB_OUTPUT_DIR");
  return env && *env ? env : ".";
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Numerical experiments on Fourier-truncated Euler flows, Lax pairs and shadowing", "chaoslab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  std::string output_dir = default_output_dir();
  std::uint64_t seed = 1;
  std::string config_path;
  app.add_option("--output-dir", output_dir, "Directory for output files (env CHAOSLAB_OUTPUT_DIR)")
      ->capture_default_str();
  Options common(&app);
  common.add("seed", seed, "Seed for every random draw");
  app.add_option("--config", config_path,
                 "key = value file, flat JSON object, or a manifest.json to replay");

  std::vector<Command> commands;
  commands.push_back(spectrum_command(app));
  commands.push_back(euler_command(app));
  commands.push_back(dashed_command(app));
  commands.push_back(nls_sim_command(app));
  commands.push_back(nls_saddle_command(app));
  commands.push_back(lax_command(app));
  commands.push_back(darboux_command(app));
  commands.push_back(shadow_command(app));

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }

  Command* cmd = nullptr;
  try {
    app.parse(argc, argv);
    for (Command& c : commands)
      if (c.app->parsed()) cmd = &c;
    if (!config_path.empty()) apply_config(load_config(config_path), *cmd->app, app);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  json config = common.resolved();
  config.update(cmd->options->resolved());
  json manifest = {{"tool", "chaoslab"},
                   {"version", kVersion},
                   {"subcommand", cmd->app->get_name()},
                   {"config", config},
                   {"output_dir", output_dir},
                   {"libraries", library_versions()}};

  const auto t0 = std::chrono::steady_clock::now();
  std::optional<RunContext> ctx;
  int rc = 0;
  std::string error;
  try {
    ctx.emplace(RunContext{OutputDir(output_dir), seed});
    cmd->run(*ctx);
  } catch (const PreconditionError& e) {
    rc = 4, error = e.what();
  } catch (const DomainError& e) {
    rc = 4, error = e.what();
  } catch (const NumericalFailure& e) {
    rc = 3, error = e.what();
  } catch (const std::exception& e) {
    rc = 1, error = e.what();
  }
  if (!ctx) {
    std::cerr << "error: " << error << "\n";
    return rc;
  }

  manifest["status"] = rc == 0 ? "ok" : "error";
  manifest["exit_code"] = rc;
  if (rc != 0) manifest["error"] = error;
  manifest["summary"] = ctx->summary;
  manifest["outputs"] = ctx->out.written();
  ctx->timings["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest["timings"] = ctx->timings;
  try {
    ctx->out.write_json("manifest.json", manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rc == 0 ? 1 : rc;
  }

  if (rc != 0) {
    std::cerr << "error: " << error << "\n";
    return rc;
  }
  std::cout << ctx->summary.dump(2) << "\n";
  return 0;
}

}  // namespace chaoslab::cli
