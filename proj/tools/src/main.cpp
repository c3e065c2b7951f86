#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "config.hpp"
#include "scenarios.hpp"
#include "sllm/error.hpp"

#ifndef SLLM_VERSION_STRING
#define SLLM_VERSION_STRING "unknown"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sllm::cli;

namespace {

enum Exit { ok = 0, usage = 2, config = 3, runtime = 4 };

int report(const char* kind, const std::string& message, const std::string& scenario, int code,
           int line = 0, const std::string& key = {}) {
  json err = {{"kind", kind}, {"message", message}};
  if (!scenario.empty()) err["scenario"] = scenario;
  if (line > 0) err["line"] = line;
  if (!key.empty()) err["key"] = key;
  std::cerr << json{{"error", err}}.dump() << '\n';
  return code;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void list_scenarios() {
  for (const auto& sc : scenarios()) {
    std::cout << sc.name << '\n';
    for (const auto& k : key_table(sc)) {
      std::cout << "  " << k.name << " = " << k.fallback << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scully-Lamb laser Liouvillian toolkit"};
  app.set_version_flag("--version", SLLM_VERSION_STRING);
  app.require_subcommand(1);

  app.add_subcommand("list", "Print every scenario with its config keys and defaults");

  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string scenario_name, config_path, output_dir;
  int threads = 1;
  long long seed = -1;
  int n_max = -1;
  bool dump_blocks = false;
  std::vector<std::string> sets;
  run->add_option("scenario", scenario_name, "Scenario name (see 'sllm list')")->required();
  run->add_option("--config", config_path, "Flat key = value config file")
      ->check(CLI::ExistingFile);
  run->add_option("--output-dir", output_dir, "Directory for CSV files and manifest.json")
      ->required();
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Master seed (overrides the config)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--n-max", n_max, "Fock cutoff (overrides the config; 0 = auto)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--set", sets, "Override a config key, key=value (repeatable)");
  run->add_flag("--dump-blocks", dump_blocks, "spectrum-sweep: also write the sector blocks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), scenario_name, Exit::usage);
  }

  if (app.got_subcommand("list")) {
    list_scenarios();
    return Exit::ok;
  }

  const auto wall_start = std::chrono::steady_clock::now();
  const std::string started = utc_now();

  RunContext ctx;
  const Scenario* scenario = nullptr;
  RawConfig raw;
  // Validation errors name a key; point back at the line that set it.
  const auto line_of = [&](const ConfigError& e) {
    if (e.line() > 0 || e.key().empty()) return e.line();
    const auto it = raw.entries.find(e.key());
    return it == raw.entries.end() ? 0 : it->second.line;
  };
  try {
    scenario = &find_scenario(scenario_name);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config '" + config_path + "'");
      raw = RawConfig::parse(in);
    }
    ctx.settings = Settings::resolve(raw, key_table(*scenario));
    const auto declared = ctx.settings.text("scenario");
    if (!declared.empty() && declared != scenario_name) {
      const int line = raw.entries.count("scenario") ? raw.entries.at("scenario").line : 0;
      throw ConfigError(
          "config declares scenario '" + declared + "' but '" + scenario_name + "' was requested",
          line, "scenario");
    }
    ctx.settings.override_value("scenario", scenario_name);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      ctx.settings.override_value(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (n_max >= 0) ctx.settings.override_value("n_max", std::to_string(n_max));
    if (seed >= 0) ctx.settings.override_value("seed", std::to_string(seed));
    if (ctx.settings.integer("seed") < 0) throw ConfigError("key 'seed': must be >= 0", 0, "seed");
    ctx.seed = static_cast<std::uint64_t>(ctx.settings.integer("seed"));
    ctx.threads = threads;
    ctx.dump_blocks = dump_blocks;
    scenario->validate(ctx);
  } catch (const ConfigError& e) {
    return report("config", e.what(), scenario_name, Exit::config, line_of(e), e.key());
  } catch (const sllm::Error& e) {
    return report("config", e.what(), scenario_name, Exit::config);
  }

  RunResult result;
  try {
    result = scenario->run(ctx);
  } catch (const ConfigError& e) {
    return report("config", e.what(), scenario_name, Exit::config, line_of(e), e.key());
  } catch (const sllm::InvalidArgument& e) {
    return report("invalid_argument", e.what(), scenario_name, Exit::runtime);
  } catch (const sllm::NumericalError& e) {
    return report("numerical", e.what(), scenario_name, Exit::runtime);
  } catch (const std::exception& e) {
    return report("internal", e.what(), scenario_name, Exit::runtime);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  try {
    const fs::path dir(output_dir);
    fs::create_directories(dir);
    json outputs = json::array();
    for (const auto& f : result.files) {
      write_file(dir / f.name, f.body);
      outputs.push_back(f.name);
    }
    const json manifest = {{"tool", "sllm"},
                           {"version", SLLM_VERSION_STRING},
                           {"scenario", scenario_name},
                           {"config_file", config_path},
                           {"config", ctx.settings.json()},
                           {"threads", threads},
                           {"started_utc", started},
                           {"wall_clock_seconds", wall},
                           {"outputs", outputs},
                           {"summary", result.summary},
                           {"exit_code", result.exit_code}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    return report("io", e.what(), scenario_name, Exit::runtime);
  }

  if (result.exit_code != 0) {
    return report("check_failed", "scenario check failed; see manifest.json summary", scenario_name,
                  result.exit_code);
  }
  return Exit::ok;
}
