#include "sllm/steady_state.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sllm/error.hpp"

namespace sllm {
namespace {

ModelParams at(double A, double N, double B = 0.1) {
  ModelParams p;
  p.A = A;
  p.B = B;
  p = apply_scaling(p, N, 0.0);
  p.n_max = recommended_cutoff(p);
  return p;
}

TEST(SteadyState, MatchesProductFormula) {
  for (double N : {1.0, 10.0, 100.0}) {
    for (double A : {0.5, 1.0, 1.5}) {
      const auto p = at(A, N);
      const auto got = steady_state(p).p;
      const auto want = oracle::product_formula(p);
      ASSERT_EQ(got.size(), want.size());
      for (int m = 0; m < got.size(); ++m) {
        if (want(m) < 1e-250) continue;
        EXPECT_NEAR(got(m) / want(m), 1.0, 1e-9) << "N=" << N << " A=" << A << " m=" << m;
      }
    }
  }
}

TEST(SteadyState, LinearGainBelowThresholdIsThermal) {
  ModelParams p;
  p.A = 0.6;
  p.B = 0.0;
  p.n_max = 200;
  const auto st = steady_state(p);
  const double n = 0.6 / 0.4;
  EXPECT_NEAR(mean_photon_number(st), n, 1e-9);
  EXPECT_NEAR(g2_zero(st), 2.0, 1e-9);
  EXPECT_NEAR(fano(st), 1.0 + n, 1e-9);
}

TEST(SteadyState, MomentsOfNormalizedState) {
  const auto st = steady_state(at(1.2, 1.0));
  EXPECT_NEAR(moment(st, 0), 1.0, 1e-14);
  EXPECT_NEAR(st.p.sum(), 1.0, 1e-14);
  EXPECT_GE(st.p.minCoeff(), 0.0);
  // Falling-factorial moments: moment(2) = <n (n - 1)>.
  const double n = moment(st, 1), nn1 = moment(st, 2);
  double direct = 0;
  for (int m = 0; m < st.p.size(); ++m) direct += m * (m - 1.0) * st.p(m);
  EXPECT_NEAR(nn1, direct, 1e-12 * direct);
  EXPECT_NEAR(g2_zero(st), nn1 / (n * n), 1e-12);
  EXPECT_NEAR(fano(st), (nn1 + n - n * n) / n, 1e-10);
}

TEST(SteadyState, IndependentOfDephasing) {
  auto p = at(1.25, 100.0);
  const auto a = steady_state(p).p;
  p.eta = 0.2;
  p.omega = 0.7;
  const auto b = steady_state(p).p;
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SteadyState, SolveRejectsNonzeroSector) {
  const auto p = at(1.0, 1.0);
  EXPECT_THROW((void)solve_steady(build_sector_block(p, 1)), InvalidArgument);
}

TEST(SteadyState, CutoffsCoverTheMass) {
  const auto p = at(1.25, 100.0);
  EXPECT_EQ(positive_gain_cutoff(p), 2499);
  EXPECT_GE(p.n_max, 30);
  EXPECT_LE(p.n_max, positive_gain_cutoff(p));
  EXPECT_LT(tail_mass(steady_state(p), 0.9 * p.n_max), 1e-12);
  EXPECT_GE(p.n_max, 2 * mass_level(p));
}

TEST(SteadyState, TailMassIsMonotone) {
  const auto st = steady_state(at(1.1, 10.0));
  EXPECT_NEAR(tail_mass(st, -1.0), 1.0, 1e-14);
  double prev = 1.0;
  for (double level = 0; level < st.n_max(); level += 5) {
    const double t = tail_mass(st, level);
    EXPECT_LE(t, prev + 1e-16);
    prev = t;
  }
}

}  // namespace
}  // namespace sllm
