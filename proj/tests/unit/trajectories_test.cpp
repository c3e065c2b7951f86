#include "sllm/trajectories.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sllm/error.hpp"

namespace sllm {
namespace {

ModelParams small() {
  ModelParams p;
  p.A = 1.2;
  p.B = 0.1;
  p.eta = 0.2;
  p.n_max = 12;
  return p;
}

TrajectoryOptions opts(double dt) {
  TrajectoryOptions o;
  o.t_f = 1.0;
  o.dt = dt;
  o.record_every = 100;
  return o;
}

TEST(Trajectories, StatesAreNormalized) {
  EXPECT_NEAR(fock_state(3, 10).norm(), 1.0, 1e-15);
  EXPECT_EQ(fock_state(3, 10)(3), Complex(1.0));
  const auto c = coherent_state({1.0, -0.5}, 40);
  EXPECT_NEAR(c.norm(), 1.0, 1e-14);
  double n = 0;
  for (int m = 0; m < c.size(); ++m) n += m * std::norm(c(m));
  EXPECT_NEAR(n, 1.25, 1e-10);
  EXPECT_THROW((void)fock_state(11, 10), InvalidArgument);
}

TEST(Trajectories, StreamSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(stream_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(Trajectories, CountingIsReproducible) {
  const auto p = small();
  const auto a = counting_trajectory(p, fock_state(0, p.n_max), opts(1e-3), 9);
  const auto b = counting_trajectory(p, fock_state(0, p.n_max), opts(1e-3), 9);
  EXPECT_EQ(a.n_mean, b.n_mean);
  EXPECT_EQ(a.x_mean, b.x_mean);
  ASSERT_EQ(a.jumps.size(), b.jumps.size());
  for (std::size_t i = 0; i < a.jumps.size(); ++i) {
    EXPECT_EQ(a.jumps[i].t, b.jumps[i].t);
    EXPECT_EQ(a.jumps[i].channel, b.jumps[i].channel);
  }
  const auto c = counting_trajectory(p, fock_state(0, p.n_max), opts(1e-3), 10);
  EXPECT_NE(a.n_mean, c.n_mean);
}

TEST(Trajectories, CountingJumpsChangePhotonNumberByChannel) {
  const auto p = small();
  const auto r = counting_trajectory(p, fock_state(0, p.n_max), opts(1e-3), 3);
  EXPECT_EQ(r.t.size(), r.n_mean.size());
  EXPECT_DOUBLE_EQ(r.t.front(), 0.0);
  EXPECT_NEAR(r.t.back(), 1.0, 1e-12);
  for (double nrm : r.norm) EXPECT_NEAR(nrm, 1.0, 1e-12);
  for (const auto& j : r.jumps) {
    EXPECT_GE(j.channel, 1);
    EXPECT_LE(j.channel, 3);
  }
}

TEST(Trajectories, HomodyneIsReproducibleAndNormalized) {
  const auto p = small();
  const std::array<double, 3> beta{2.0, 2.0, 2.0};
  const auto a = homodyne_trajectory(p, fock_state(1, p.n_max), beta, opts(1e-4), 5);
  const auto b = homodyne_trajectory(p, fock_state(1, p.n_max), beta, opts(1e-4), 5);
  EXPECT_EQ(a.n_mean, b.n_mean);
  EXPECT_EQ(a.x_mean, b.x_mean);
  for (double nrm : a.norm) EXPECT_NEAR(nrm, 1.0, 1e-12);
}

TEST(Trajectories, OversizedStepIsRejected) {
  const auto p = small();
  EXPECT_THROW((void)counting_trajectory(p, fock_state(8, p.n_max), opts(0.5), 1), NumericalError);
}

TEST(Trajectories, EnsembleDoesNotDependOnThreadCount) {
  const auto p = small();
  EnsembleSpec spec;
  spec.n_traj = 6;
  spec.options = opts(1e-3);
  spec.threads = 1;
  const auto one = run_ensemble(p, fock_state(0, p.n_max), spec);
  spec.threads = 3;
  const auto three = run_ensemble(p, fock_state(0, p.n_max), spec);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].seed, three[i].seed);
    EXPECT_EQ(one[i].n_mean, three[i].n_mean);
  }
}

TEST(Trajectories, SufficientStatsMergeEqualsSequential) {
  SufficientStats all, left, right;
  for (int i = 0; i < 10; ++i) {
    const double v = 0.3 * i * i - i;
    all.add(v);
    (i < 4 ? left : right).add(v);
  }
  left.merge(right);
  EXPECT_EQ(left.count, all.count);
  EXPECT_NEAR(left.mean(), all.mean(), 1e-12);
  EXPECT_NEAR(left.standard_error(), all.standard_error(), 1e-12);
}

TEST(Trajectories, EnsembleAverageAndHistogram) {
  TrajectoryRecord a, b;
  a.t = b.t = {0.0, 1.0, 2.0, 3.0};
  a.n_mean = {0.0, 1.0, 2.0, 3.0};
  b.n_mean = {0.0, 3.0, 2.0, 1.0};
  a.x_mean = b.x_mean = {0.0, 0.0, 0.0, 0.0};
  const auto avg = ensemble_average({a, b});
  EXPECT_EQ(avg.count, 2u);
  EXPECT_DOUBLE_EQ(avg.n_mean[1], 2.0);
  EXPECT_DOUBLE_EQ(avg.n_stderr[1], 1.0);

  HistogramSpec hs;
  hs.burn_in = 0.5;
  hs.bins = 4;
  hs.lo = 0.0;
  hs.hi = 4.0;
  hs.batches = 2;
  const auto h = trajectory_histogram({a, b}, hs);
  EXPECT_EQ(h.samples, 6u);
  EXPECT_EQ(h.edges.size(), 5u);
  double total = 0;
  for (double m : h.mass) total += m;
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(h.mean, 2.0);
}

}  // namespace
}  // namespace sllm
