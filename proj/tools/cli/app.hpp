#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace chaoslab::cli {

using json = nlohmann::json;

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

json complex_json(std::complex<double> z);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

// Files land under a temporary name and are renamed into place.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  const std::filesystem::path& path() const { return dir_; }
  void write_text(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const json& j);
  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

struct RunContext {
  OutputDir out;
  std::uint64_t seed = 1;
  json summary = json::object();
  json timings = json::object();

  template <class F>
  decltype(auto) timed(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Stop {
      RunContext& ctx;
      std::string phase;
      std::chrono::steady_clock::time_point t0;
      ~Stop() {
        ctx.timings[phase] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
    } stop{*this, phase, t0};
    return f();
  }
};

// Registers options on a subcommand and remembers how to serialise their
// resolved values, so a manifest can be replayed as a config file.
class Options {
 public:
  explicit Options(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& help) {
    dump_.emplace_back([name, &var](json& j) { j[name] = var; });
    return app_->add_option("--" + name, var, help)->capture_default_str();
  }

  template <class T>
  CLI::Option* list(const std::string& name, std::vector<T>& var, int count, const std::string& help) {
    dump_.emplace_back([name, &var](json& j) { j[name] = var; });
    return app_->add_option("--" + name, var, help)->delimiter(',')->expected(count)->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    dump_.emplace_back([name, &var](json& j) { j[name] = var; });
    return app_->add_flag("--" + name, var, help);
  }

  json resolved() const {
    json j = json::object();
    for (const auto& d : dump_) d(j);
    return j;
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(json&)>> dump_;
};

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Options> options;
  std::function<void(RunContext&)> run;

  explicit Command(CLI::App* a) : app(a), options(std::make_unique<Options>(a)) {}
};

Command spectrum_command(CLI::App& root);
Command euler_command(CLI::App& root);
Command dashed_command(CLI::App& root);
Command nls_sim_command(CLI::App& root);
Command nls_saddle_command(CLI::App& root);
Command lax_command(CLI::App& root);
Command darboux_command(CLI::App& root);
Command shadow_command(CLI::App& root);

}  // namespace chaoslab::cli
