#pragma once

#include <functional>
#include <vector>

#include "sllm/liouvillian.hpp"
#include "sllm/model.hpp"
#include "sllm/steady_state.hpp"

namespace sllm {

// Gain as a function of time, in units of gamma. An empty schedule means the
// constant params.A.
using GainSchedule = std::function<double(double)>;

struct IntegratorOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double trace_tol = 1e-9;
  // Upper bound on adaptive steps between two consecutive output times.
  int max_steps_per_output = 5'000'000;
};

struct Sector0Sample {
  double t = 0.0;
  DiagonalState state;
  double n_mean = 0.0;
};

// Integrates dp/dt = block0(A(t)) p with an adaptive Dormand-Prince 5(4)
// pair and dense output at the requested times. t_grid must start at 0 and
// increase. Throws NumericalError on integrator failure or when the total
// population drifts from 1 by more than trace_tol.
[[nodiscard]] std::vector<Sector0Sample> evolve_sector0(const DiagonalState& p0,
                                                        const ModelParams& params,
                                                        const GainSchedule& gain,
                                                        const std::vector<double>& t_grid,
                                                        const IntegratorOptions& options = {});

inline constexpr int kFullEvolutionLimit = 40;

struct FullSample {
  double t = 0.0;
  ComplexMatrix rho;
};

// Integrates the full master equation; restricted to n_max <= limit.
[[nodiscard]] std::vector<FullSample> evolve_full(const ComplexMatrix& rho0,
                                                  const ModelParams& params,
                                                  const std::vector<double>& t_grid,
                                                  const GainSchedule& gain = {},
                                                  const IntegratorOptions& options = {},
                                                  int limit = kFullEvolutionLimit);

[[nodiscard]] Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

enum class RampDirection { up, down };

// A_up(t) = gamma/2 + gamma t / t_f and A_down(t) = 3 gamma/2 - gamma t / t_f.
struct RampProtocol {
  RampDirection direction = RampDirection::up;
  double t_f = 200.0;
  double gamma = 1.0;

  [[nodiscard]] double gain(double t) const noexcept;
  [[nodiscard]] double start() const noexcept { return gain(0.0); }
};

struct HysteresisSample {
  double t = 0.0;
  double A_over_gamma = 0.0;
  double n_mean = 0.0;
};

struct HysteresisResult {
  std::vector<HysteresisSample> up;
  std::vector<HysteresisSample> down;
  double loop_area = 0.0;  // integral of |n_up - n_down| / N over A / gamma
  int n_max = 0;
};

// Cutoff for a ramp between A_lo and A_hi: 1.25 times the steady-state
// mass_level at A_hi (at least 30), kept inside the region where the saturated gain stays below the
// loss at A_lo (f(m)^2 < gamma (m + 1)).
[[nodiscard]] int ramp_cutoff(const ModelParams& params, double A_lo, double A_hi);

// Both ramps start from the steady state at their initial gain. Samples are
// uniform in t, so the two branches share the A grid. params.N rescales the
// photon numbers; params.n_max is replaced by ramp_cutoff unless n_max > 0.
[[nodiscard]] HysteresisResult hysteresis(const ModelParams& params, double t_f, int samples,
                                          int n_max = 0, int threads = 1,
                                          const IntegratorOptions& options = {});

// Least-squares slope of log|y| against t over samples with t >= t_start;
// returns the positive decay rate.
[[nodiscard]] double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y,
                                    double t_start);

}  // namespace sllm
