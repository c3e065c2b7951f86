#include "sllm/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sllm/error.hpp"

namespace sllm {

namespace {

constexpr int kUnboundedCutoff = 1 << 20;

void require_positive_mean(double n) {
  if (!(n > 0.0)) throw InvalidArgument("photon statistics need <n> > 0");
}

}  // namespace

DiagonalState solve_steady(const SectorBlock& block0) {
  if (block0.k != 0) {
    std::ostringstream os;
    os << "solve_steady needs the k = 0 block (got k = " << block0.k << ")";
    throw InvalidArgument(os.str());
  }
  const int d = block0.dim();
  for (int i = 0; i + 1 < d; ++i) {
    if (!(block0.upper(i) > 0.0)) {
      std::ostringstream os;
      os << "sector-0 chain is disconnected at level " << i + 1 << "; steady state is not unique";
      throw NumericalError(os.str());
    }
  }

  // u_i p_{i+1} = l_i p_i, accumulated in log space.
  std::vector<double> log_p(d, 0.0);
  double top = 0.0;
  int support = d;
  for (int i = 0; i + 1 < d; ++i) {
    if (!(block0.lower(i) > 0.0)) {
      support = i + 1;
      break;
    }
    log_p[i + 1] = log_p[i] + std::log(block0.lower(i)) - std::log(block0.upper(i));
    top = std::max(top, log_p[i + 1]);
  }

  DiagonalState state;
  state.p = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < support; ++i) state.p(i) = std::exp(log_p[i] - top);
  state.p /= state.p.sum();

  const ComplexVector residual = block0.apply(state.p.cast<Complex>());
  double scale = 0.0;
  for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(block0.diagonal(i)));
  const double res = residual.cwiseAbs().maxCoeff();
  if (!(res <= 1e-10 * std::max(scale, 1.0))) {
    std::ostringstream os;
    os << "sector-0 null vector residual " << res << " too large; block is not a birth-death"
       << " generator";
    throw NumericalError(os.str());
  }
  for (int i = 0; i < d; ++i) {
    if (state.p(i) < 0.0) {
      if (state.p(i) < -kNegativeClip) throw NumericalError("negative steady-state population");
      state.p(i) = 0.0;
    }
  }
  state.p /= state.p.sum();
  return state;
}

DiagonalState steady_state(const ModelParams& params) {
  return solve_steady(build_sector_block(params, 0));
}

double moment(const DiagonalState& state, int order) {
  if (order < 0) throw InvalidArgument("moment order must be >= 0");
  double total = 0.0;
  for (int m = 0; m < state.p.size(); ++m) {
    double falling = 1.0;
    for (int r = 0; r < order; ++r) falling *= static_cast<double>(m - r);
    total += state.p(m) * falling;
  }
  return total;
}

double mean_photon_number(const DiagonalState& state) { return moment(state, 1); }

double g2_zero(const DiagonalState& state) {
  const double n = moment(state, 1);
  require_positive_mean(n);
  return moment(state, 2) / (n * n);
}

double fano(const DiagonalState& state) {
  const double n = moment(state, 1);
  require_positive_mean(n);
  const double second = moment(state, 2);
  const double from_g2 = n * (second / (n * n) - 1.0) + 1.0;
  const double variance = second + n - n * n;
  const double from_variance = variance / n;
  if (std::abs(from_g2 - from_variance) > 1e-10 * std::max(std::abs(from_variance), 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "Fano factor routes disagree: " << from_variance << " vs " << from_g2;
    throw NumericalError(os.str());
  }
  return from_variance;
}

double tail_mass(const DiagonalState& state, double level) {
  double total = 0.0;
  for (int m = 0; m < state.p.size(); ++m) {
    if (static_cast<double>(m) > level) total += state.p(m);
  }
  return total;
}

int positive_gain_cutoff(const ModelParams& p) {
  if (p.B == 0.0) return kUnboundedCutoff;
  const double edge = 2.0 * p.A / p.B;
  if (edge >= static_cast<double>(kUnboundedCutoff)) return kUnboundedCutoff;
  return static_cast<int>(std::ceil(edge)) - 1;
}

int mass_level(const ModelParams& p, double mass_tolerance) {
  validate(p);
  const int cap = positive_gain_cutoff(p);
  if (cap < 2) {
    std::ostringstream os;
    os << "gain saturates before level 2 (2A/B = " << 2.0 * p.A / p.B << ")";
    throw InvalidArgument(os.str());
  }
  if (p.B == 0.0 && p.A >= p.gamma) {
    throw InvalidArgument("no normalizable steady state for B = 0 at or above threshold");
  }

  const double sqrt_a = std::sqrt(p.A);
  std::vector<double> log_w{0.0};
  double top = 0.0;
  for (int m = 0; m < cap; ++m) {
    const double x = static_cast<double>(m + 1);
    const double f = std::sqrt(x) * (sqrt_a - p.B * x / (2.0 * sqrt_a));
    const double next = log_w.back() + 2.0 * std::log(f) - std::log(p.gamma * x);
    log_w.push_back(next);
    top = std::max(top, next);
    if (next < top - 80.0 && next < log_w[log_w.size() - 2]) break;
  }
  double total = 0.0;
  for (double lw : log_w) total += std::exp(lw - top);
  double cumulative = 0.0;
  for (std::size_t m = 0; m < log_w.size(); ++m) {
    cumulative += std::exp(log_w[m] - top) / total;
    if (cumulative >= 1.0 - mass_tolerance) return static_cast<int>(m);
  }
  return static_cast<int>(log_w.size()) - 1;
}

int recommended_cutoff(const ModelParams& p, double mass_tolerance) {
  const int level = mass_level(p, mass_tolerance);
  int n_max = std::max(30, 2 * level);
  if (p.B > 0.0 && p.A > p.gamma) {
    n_max = std::max(n_max, static_cast<int>(std::ceil(4.0 * (p.A - p.gamma) / p.B)));
  }
  return std::min(n_max, positive_gain_cutoff(p));
}

}  // namespace sllm
