#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "config.hpp"
#include "sllm/model.hpp"

namespace sllm::cli {

struct Artifact {
  std::string name;
  std::string body;
};

struct RunContext {
  Settings settings;
  int threads = 1;
  std::uint64_t seed = 1;
  bool dump_blocks = false;
};

struct RunResult {
  std::vector<Artifact> files;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  int exit_code = 0;  // nonzero when the scenario ran but its check failed
};

struct Scenario {
  std::string name;
  std::vector<KeySpec> keys;  // scenario keys, in addition to the model keys
  std::function<void(const RunContext&)> validate;
  std::function<RunResult(const RunContext&)> run;
};

[[nodiscard]] const std::vector<Scenario>& scenarios();
[[nodiscard]] const Scenario& find_scenario(const std::string& name);

// Model keys plus the scenario's own keys.
[[nodiscard]] std::vector<KeySpec> key_table(const Scenario& scenario);

// ModelParams from the model keys, before any N scaling.
[[nodiscard]] ModelParams base_params(const Settings& settings);

}  // namespace sllm::cli
