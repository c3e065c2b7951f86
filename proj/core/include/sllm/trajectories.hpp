#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sllm/dynamics.hpp"
#include "sllm/liouvillian.hpp"
#include "sllm/model.hpp"

namespace sllm {

// Channels are numbered as the jump operators: 1 gain, 2 dephasing, 3 loss.
struct JumpEvent {
  double t = 0.0;
  int channel = 0;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> n_mean;
  std::vector<double> x_mean;  // <x> with x = (a + a^dag) / 2
  std::vector<double> norm;
  std::vector<JumpEvent> jumps;
};

struct TrajectoryOptions {
  double t_f = 1.0;
  double dt = 1e-3;
  int record_every = 1;  // steps between recorded samples
  GainSchedule gain;     // empty keeps params.A
};

// Probability budget per step: sum_j p_j must stay below this.
inline constexpr double kMaxJumpProbability = 0.1;

// First-order jump unraveling, at most one jump per step. Each step draws one
// uniform u. The no-jump branch K psi, K = exp(-i H_eff dt), keeps weight
// |K psi|^2; the rest is shared among channels in proportion to
// p_j = dt <psi|L_j^dag L_j|psi>. Throws when sum_j p_j reaches
// kMaxJumpProbability. The ensemble error is O(dt) with a constant that
// grows with the total jump rate, so large reference fields need small dt.
[[nodiscard]] TrajectoryRecord counting_trajectory(const ModelParams& params,
                                                   const ComplexVector& psi0,
                                                   const TrajectoryOptions& options,
                                                   std::uint64_t seed);

// Same engine with L_j -> L_j + beta_j and
// H_eff(beta) = w n - (i/2) sum_j (L_j^dag L_j + 2 beta_j L_j + beta_j^2),
// which keeps the ensemble on the master equation. beta = 0 reproduces
// counting_trajectory bit for bit.
[[nodiscard]] TrajectoryRecord homodyne_trajectory(const ModelParams& params,
                                                   const ComplexVector& psi0,
                                                   const std::array<double, 3>& beta_ref,
                                                   const TrajectoryOptions& options,
                                                   std::uint64_t seed);

// Seed of stream `index` derived from the master seed with splitmix64.
[[nodiscard]] std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

enum class Unraveling { counting, homodyne };

struct EnsembleSpec {
  Unraveling kind = Unraveling::counting;
  std::array<double, 3> beta_ref{10.0, 10.0, 10.0};
  int n_traj = 200;
  std::uint64_t master_seed = 1;
  int threads = 1;
  TrajectoryOptions options;
};

// Trajectory i uses stream_seed(master_seed, i); results are in index order.
[[nodiscard]] std::vector<TrajectoryRecord> run_ensemble(const ModelParams& params,
                                                         const ComplexVector& psi0,
                                                         const EnsembleSpec& spec);

// Running sum, sum of squares and count; merging is exact and order free.
struct SufficientStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double v) noexcept;
  void merge(const SufficientStats& other) noexcept;
  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double standard_error() const noexcept;
};

struct EnsembleAverage {
  std::vector<double> t;
  std::vector<double> n_mean;
  std::vector<double> n_stderr;
  std::vector<double> x_mean;
  std::vector<double> x_stderr;
  std::size_t count = 0;
};

[[nodiscard]] EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records);

struct HistogramSpec {
  double burn_in = 0.0;
  int bins = 50;
  double lo = 0.0;
  double hi = 0.0;   // hi <= lo takes the range from the data
  int batches = 20;  // per record, for the standard error of the mean
};

struct Histogram {
  std::vector<double> edges;
  std::vector<double> mass;  // sums to 1
  double mean = 0.0;
  double mean_stderr = 0.0;  // batch means
  std::size_t samples = 0;
};

// Distribution of recorded <n> after burn_in, pooled over records.
[[nodiscard]] Histogram trajectory_histogram(const std::vector<TrajectoryRecord>& records,
                                             const HistogramSpec& spec);

[[nodiscard]] ComplexVector fock_state(int n, int n_max);
// Coherent state truncated at n_max and renormalized.
[[nodiscard]] ComplexVector coherent_state(Complex alpha, int n_max);

}  // namespace sllm
