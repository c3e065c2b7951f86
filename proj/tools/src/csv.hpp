#pragma once

#include <cstdio>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>

namespace sllm::cli {

// Fixed 17-significant-digit formatting so identical runs give identical bytes.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::initializer_list<std::string_view> header) {
    bool first = true;
    for (auto h : header) {
      if (!first) body_ += ',';
      body_ += h;
      first = false;
    }
    body_ += '\n';
  }

  template <class... T>
  void row(const T&... fields) {
    bool first = true;
    ((append(fields, first), first = false), ...);
    body_ += '\n';
  }

  [[nodiscard]] const std::string& str() const noexcept { return body_; }

 private:
  template <class T>
  void append(const T& v, bool first) {
    if (!first) body_ += ',';
    if constexpr (std::is_same_v<T, bool>) {
      body_ += v ? "1" : "0";
    } else if constexpr (std::is_floating_point_v<T>) {
      body_ += format_number(static_cast<double>(v));
    } else if constexpr (std::is_integral_v<T>) {
      body_ += std::to_string(v);
    } else {
      body_ += std::string_view(v);
    }
  }

  std::string body_;
};

}  // namespace sllm::cli
