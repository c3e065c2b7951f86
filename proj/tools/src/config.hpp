#pragma once

#include <istream>
#include <json.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sllm::cli {

// Parse or validation problem in a config file. line is 0 when the problem
// is not tied to a line (e.g. a command-line override).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string key = {})
      : std::runtime_error(message), line_(line), key_(std::move(key)) {}
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

enum class KeyType { number, integer, text, number_list, integer_list };

struct KeySpec {
  std::string name;
  KeyType type;
  std::string fallback;  // textual default, parsed like a config value
};

// Flat "key = value" text. '#' starts a comment; blank lines are ignored.
struct RawConfig {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries;

  static RawConfig parse(std::istream& in);
};

// Config resolved against a key table: every known key has a typed value.
class Settings {
 public:
  static Settings resolve(const RawConfig& raw, const std::vector<KeySpec>& keys);

  // Replaces a value as if it had been written in the file.
  void override_value(const std::string& key, const std::string& value);

  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] long long integer(const std::string& key) const;
  [[nodiscard]] std::string text(const std::string& key) const;
  [[nodiscard]] std::vector<double> numbers(const std::string& key) const;
  [[nodiscard]] std::vector<long long> integers(const std::string& key) const;
  [[nodiscard]] const nlohmann::ordered_json& json() const noexcept { return values_; }

 private:
  [[nodiscard]] const nlohmann::ordered_json& at(const std::string& key) const;

  std::vector<KeySpec> keys_;
  nlohmann::ordered_json values_ = nlohmann::ordered_json::object();
};

// Parses one value of the given type. Lists are comma separated; a number
// list item may also be "start:step:stop" (inclusive).
[[nodiscard]] nlohmann::ordered_json parse_value(const std::string& text, KeyType type,
                                                 const std::string& key, int line);

}  // namespace sllm::cli
