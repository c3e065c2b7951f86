#pragma once

#include <Eigen/Dense>

#include "sllm/liouvillian.hpp"
#include "sllm/model.hpp"

namespace sllm {

// Populations p_m of a state diagonal in the Fock basis, m = 0..n_max.
struct DiagonalState {
  Eigen::VectorXd p;

  [[nodiscard]] int n_max() const noexcept { return static_cast<int>(p.size()) - 1; }
};

// Roundoff allowance for negative populations; anything below is clipped to 0.
inline constexpr double kNegativeClip = 1e-12;

// Null vector of the sector-0 block, normalized to unit sum. The block is a
// birth-death generator, so the null vector follows from zero net flux
// between neighbouring levels; the residual is checked against the block.
[[nodiscard]] DiagonalState solve_steady(const SectorBlock& block0);

// Convenience: solve_steady(build_sector_block(params, 0)).
[[nodiscard]] DiagonalState steady_state(const ModelParams& params);

// Falling-factorial moment sum_m p_m m (m-1) ... (m-order+1).
[[nodiscard]] double moment(const DiagonalState& state, int order);
[[nodiscard]] double mean_photon_number(const DiagonalState& state);
[[nodiscard]] double g2_zero(const DiagonalState& state);

// Fano factor. Computed as variance / mean and as <n>(g2 - 1) + 1; throws
// NumericalError when the two differ by more than 1e-10 relative.
[[nodiscard]] double fano(const DiagonalState& state);

// Total population on levels m > level.
[[nodiscard]] double tail_mass(const DiagonalState& state, double level);

// Largest cutoff with f(m) > 0 on every level below it: ceil(2A/B) - 1.
// Returns a large sentinel when B == 0.
[[nodiscard]] int positive_gain_cutoff(const ModelParams& params);

// Lowest level below which all but mass_tolerance of the steady-state
// population sits, from the birth-death product on a chain limited only by
// positive_gain_cutoff.
[[nodiscard]] int mass_level(const ModelParams& params, double mass_tolerance = 1e-14);

// Cutoff for a converged steady state: max(30, ceil(4 (A - gamma) / B),
// 2 mass_level), limited by positive_gain_cutoff. The photon scale leaves out
// eta because the sector-0 state does not depend on it.
[[nodiscard]] int recommended_cutoff(const ModelParams& params, double mass_tolerance = 1e-14);

}  // namespace sllm
