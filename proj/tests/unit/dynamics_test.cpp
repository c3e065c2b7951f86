#include "sllm/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "oracles.hpp"
#include "sllm/error.hpp"
#include "sllm/trajectories.hpp"

namespace sllm {
namespace {

ModelParams small() {
  ModelParams p;
  p.A = 1.2;
  p.B = 0.1;
  p.eta = 0.2;
  p.omega = 0.5;
  p.n_max = 25;
  return p;
}

TEST(Dynamics, Sector0MatchesMatrixExponential) {
  const auto p = small();
  DiagonalState p0;
  p0.p = Eigen::VectorXd::Zero(p.n_max + 1);
  p0.p(0) = 1.0;
  const std::vector<double> ts = {0.0, 0.5, 2.0, 7.0};
  const auto run = evolve_sector0(p0, p, {}, ts);
  ASSERT_EQ(run.size(), ts.size());
  const Eigen::MatrixXd gen = build_sector_block(p, 0).dense().real();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Eigen::MatrixXd step = (gen * ts[i]).exp();
    const Eigen::VectorXd want = step * p0.p;
    EXPECT_LT((run[i].state.p - want).cwiseAbs().maxCoeff(), 1e-7) << "t=" << ts[i];
    EXPECT_NEAR(run[i].n_mean, mean_photon_number({want}), 1e-6);
  }
}

TEST(Dynamics, Sector0ReachesSteadyState) {
  const auto p = small();
  DiagonalState p0;
  p0.p = Eigen::VectorXd::Zero(p.n_max + 1);
  p0.p(0) = 1.0;
  const auto run = evolve_sector0(p0, p, {}, {0.0, 200.0});
  EXPECT_LT((run.back().state.p - steady_state(p).p).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Dynamics, FullEvolutionMatchesSuperoperatorExponential) {
  auto p = small();
  p.n_max = 6;
  const ComplexVector psi = coherent_state({0.8, 0.3}, p.n_max);
  const ComplexMatrix start = psi * psi.adjoint();
  const std::vector<double> ts = {0.0, 0.7, 3.0};
  const auto run = evolve_full(start, p, ts);
  const auto S = oracle::naive_liouvillian(p);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const ComplexMatrix prop = (S * ts[i]).exp();
    const ComplexVector v = prop * vectorize(start);
    EXPECT_LT((run[i].rho - unvectorize(v, p.n_max + 1)).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_NEAR(run[i].rho.trace().real(), 1.0, 1e-9);
  }
}

TEST(Dynamics, FullEvolutionRefusesLargeCutoff) {
  auto p = small();
  p.n_max = 41;
  const ComplexMatrix rho = ComplexMatrix::Identity(42, 42) / 42.0;
  EXPECT_THROW((void)evolve_full(rho, p, {0.0, 1.0}), InvalidArgument);
}

TEST(Dynamics, TimeDependentGainIsFollowed) {
  auto p = small();
  p.n_max = 8;
  p.B = 0.0;  // with saturation, A -> 0 blows up the B / sqrt(A) term
  // Gain switched off smoothly around t = 0.5: afterwards only loss acts.
  const GainSchedule gain = [](double t) {
    return 0.6 * (1.0 - std::tanh((t - 0.5) / 0.02)) + 1e-12;
  };
  DiagonalState p0;
  p0.p = Eigen::VectorXd::Zero(p.n_max + 1);
  p0.p(3) = 1.0;
  const auto run = evolve_sector0(p0, p, gain, {0.0, 1.0, 3.0});
  EXPECT_NEAR(run[2].n_mean, run[1].n_mean * std::exp(-2.0), 1e-4);
}

TEST(Dynamics, RampProtocolEndpoints) {
  const RampProtocol up{RampDirection::up, 200.0, 1.0};
  const RampProtocol down{RampDirection::down, 200.0, 1.0};
  EXPECT_DOUBLE_EQ(up.start(), 0.5);
  EXPECT_DOUBLE_EQ(up.gain(200.0), 1.5);
  EXPECT_DOUBLE_EQ(down.start(), 1.5);
  EXPECT_DOUBLE_EQ(down.gain(100.0), 1.0);
}

TEST(Dynamics, HysteresisLoopIsOpenAndShrinksWithSlowerRamps) {
  ModelParams p;
  p.B = 0.1;
  const auto fast = hysteresis(p, 20.0, 81);
  const auto slow = hysteresis(p, 200.0, 81);
  ASSERT_EQ(fast.up.size(), 81u);
  EXPECT_DOUBLE_EQ(fast.up.front().A_over_gamma, 0.5);
  EXPECT_DOUBLE_EQ(fast.down.front().A_over_gamma, 1.5);
  EXPECT_GT(fast.loop_area, slow.loop_area);
  EXPECT_GT(slow.loop_area, 0.0);
  // The up branch lags below the down branch at the midpoint.
  EXPECT_LT(fast.up[40].n_mean, fast.down[40].n_mean);
}

TEST(Dynamics, FitDecayRateRecoversExponent) {
  std::vector<double> t, y;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3.0 * std::exp(-0.37 * t.back()) + (i < 10 ? 1.0 : 0.0));
  }
  EXPECT_NEAR(fit_decay_rate(t, y, 1.5), 0.37, 1e-12);
  EXPECT_THROW((void)fit_decay_rate(t, y, 20.0), InvalidArgument);
}

}  // namespace
}  // namespace sllm
