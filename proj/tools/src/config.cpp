#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sllm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

[[noreturn]] void bad_value(const std::string& key, int line, const std::string& text,
                            const char* expected) {
  std::ostringstream os;
  os << "key '" << key << "': cannot read '" << text << "' as " << expected;
  throw ConfigError(os.str(), line, key);
}

double to_double(const std::string& text, const std::string& key, int line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    bad_value(key, line, text, "a finite number");
  }
  return v;
}

long long to_integer(const std::string& text, const std::string& key, int line) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) bad_value(key, line, text, "an integer");
  return v;
}

}  // namespace

RawConfig RawConfig::parse(std::istream& in) {
  RawConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + line + "'", number);
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("missing key before '='", number);
    if (cfg.entries.count(key) != 0) {
      std::ostringstream os;
      os << "key '" << key << "' repeated (first set on line " << cfg.entries[key].line << ")";
      throw ConfigError(os.str(), number, key);
    }
    cfg.entries[key] = {trim(line.substr(eq + 1)), number};
  }
  return cfg;
}

nlohmann::ordered_json parse_value(const std::string& text, KeyType type, const std::string& key,
                                   int line) {
  switch (type) {
    case KeyType::number:
      return to_double(text, key, line);
    case KeyType::integer:
      return to_integer(text, key, line);
    case KeyType::text:
      return text;
    case KeyType::number_list: {
      auto out = nlohmann::ordered_json::array();
      if (text.empty()) return out;
      for (const auto& item : split(text, ',')) {
        const auto range = split(item, ':');
        if (range.size() == 1) {
          out.push_back(to_double(item, key, line));
          continue;
        }
        if (range.size() != 3) bad_value(key, line, item, "start:step:stop");
        const double start = to_double(range[0], key, line);
        const double step = to_double(range[1], key, line);
        const double stop = to_double(range[2], key, line);
        if (!(step > 0.0) || stop < start) bad_value(key, line, item, "an increasing range");
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        if (count > 1'000'000) bad_value(key, line, item, "a range of at most 10^6 points");
        for (long long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
      }
      return out;
    }
    case KeyType::integer_list: {
      auto out = nlohmann::ordered_json::array();
      if (text.empty()) return out;
      for (const auto& item : split(text, ',')) out.push_back(to_integer(item, key, line));
      return out;
    }
  }
  return nullptr;
}

Settings Settings::resolve(const RawConfig& raw, const std::vector<KeySpec>& keys) {
  Settings s;
  s.keys_ = keys;
  for (const auto& [name, entry] : raw.entries) {
    const bool known =
        std::any_of(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == name; });
    if (!known) throw ConfigError("unknown key '" + name + "'", entry.line, name);
  }
  for (const auto& k : keys) {
    const auto it = raw.entries.find(k.name);
    s.values_[k.name] = it == raw.entries.end()
                            ? parse_value(k.fallback, k.type, k.name, 0)
                            : parse_value(it->second.value, k.type, k.name, it->second.line);
  }
  return s;
}

void Settings::override_value(const std::string& key, const std::string& value) {
  const auto it =
      std::find_if(keys_.begin(), keys_.end(), [&](const KeySpec& k) { return k.name == key; });
  if (it == keys_.end()) throw ConfigError("unknown key '" + key + "'", 0, key);
  values_[key] = parse_value(value, it->type, key, 0);
}

const nlohmann::ordered_json& Settings::at(const std::string& key) const {
  if (!values_.contains(key)) throw ConfigError("key '" + key + "' not defined", 0, key);
  return values_.at(key);
}

double Settings::number(const std::string& key) const { return at(key).get<double>(); }
long long Settings::integer(const std::string& key) const { return at(key).get<long long>(); }
std::string Settings::text(const std::string& key) const { return at(key).get<std::string>(); }
std::vector<double> Settings::numbers(const std::string& key) const {
  return at(key).get<std::vector<double>>();
}
std::vector<long long> Settings::integers(const std::string& key) const {
  return at(key).get<std::vector<long long>>();
}

}  // namespace sllm::cli
