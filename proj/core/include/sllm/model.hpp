#pragma once

#include <array>

namespace sllm {

// Physical parameters of one run. Rates are expressed in units of the
// cavity loss rate; `gamma` is normally 1.
//
// `N` and `mu` record the thermodynamic scaling that produced A, B and gamma
// (see apply_scaling); they are bookkeeping and do not enter the generator.
struct ModelParams {
  double A = 1.0;      // unsaturated gain
  double B = 0.0;      // gain saturation
  double gamma = 1.0;  // cavity loss
  double eta = 0.0;    // additional dephasing
  double omega = 0.0;  // cavity frequency
  double N = 1.0;
  double mu = 0.0;
  int n_max = 30;  // Fock cutoff

  // Overall dephasing rate of the a a^dag channel.
  [[nodiscard]] double beta() const noexcept { return (3.0 * B + 4.0 * eta) / 4.0; }
};

// Throws InvalidArgument unless A > 0, B >= 0, gamma > 0, eta >= 0, N > 0
// and n_max >= 2.
void validate(const ModelParams& params);

// {A, B, gamma} -> {A N^mu, B / N^(1-mu), gamma N^mu}. eta, omega and n_max
// are untouched; the result records the accumulated N and the given mu.
[[nodiscard]] ModelParams apply_scaling(const ModelParams& params, double N, double mu);

// Semiclassical (coherent-state) photon number max(0, (A - gamma - eta) / B).
// Returns +inf above threshold when B == 0.
[[nodiscard]] double semiclassical_nss(const ModelParams& params);

struct WgsReport {
  bool satisfied = false;
  // B / gamma, |A - gamma| / (2A), B (n_ref + 1) / (2A)
  std::array<double, 3> ratios{};
  double threshold = 0.1;
};

// Relative slack applied when comparing a ratio to the threshold. The third
// condition carries the +1 of <a a^dag>, so a state sitting exactly on the
// nominal boundary would otherwise fail by O(1/n_ref).
inline constexpr double kWgsSlack = 0.01;

// Weak-gain-saturation check with "much less than" read as ratio <= threshold.
[[nodiscard]] WgsReport wgs_check(const ModelParams& params, double n_ref, double threshold = 0.1);

}  // namespace sllm
