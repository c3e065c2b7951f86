#include "sllm/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "sllm/error.hpp"

namespace sllm {
namespace {

TEST(Model, ScalingMovesRatesAsPowersOfN) {
  ModelParams p;
  p.A = 1.25;
  p.B = 0.1;
  const auto s = apply_scaling(p, 100.0, 0.5);
  EXPECT_DOUBLE_EQ(s.A, 12.5);
  EXPECT_DOUBLE_EQ(s.gamma, 10.0);
  EXPECT_DOUBLE_EQ(s.B, 0.01);
  EXPECT_DOUBLE_EQ(s.N, 100.0);
  EXPECT_DOUBLE_EQ(s.A / s.gamma, p.A / p.gamma);
}

TEST(Model, ScalingComposes) {
  ModelParams p;
  p.B = 0.1;
  const auto twice = apply_scaling(apply_scaling(p, 4.0, 0.0), 25.0, 0.0);
  const auto once = apply_scaling(p, 100.0, 0.0);
  EXPECT_NEAR(twice.B, once.B, 1e-16);
  EXPECT_DOUBLE_EQ(twice.N, 100.0);
}

TEST(Model, ScalingRejectsBadN) {
  ModelParams p;
  EXPECT_THROW((void)apply_scaling(p, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW((void)apply_scaling(p, std::numeric_limits<double>::infinity(), 0.0),
               InvalidArgument);
}

TEST(Model, ValidateRejectsEachBadField) {
  ModelParams good;
  EXPECT_NO_THROW(validate(good));
  auto bad = good;
  bad.A = 0.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.B = -1e-3;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.gamma = 0.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.eta = -0.1;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.n_max = 1;
  EXPECT_THROW(validate(bad), InvalidArgument);
}

TEST(Model, BetaCombinesSaturationAndDephasing) {
  ModelParams p;
  p.B = 0.4;
  p.eta = 0.2;
  EXPECT_DOUBLE_EQ(p.beta(), 0.3 + 0.2);
}

TEST(Model, SemiclassicalPhotonNumber) {
  ModelParams p;
  p.A = 1.25;
  p.B = 0.001;
  EXPECT_NEAR(semiclassical_nss(p), 250.0, 1e-9);
  p.A = 0.75;
  EXPECT_EQ(semiclassical_nss(p), 0.0);
  p.A = 1.5;
  p.B = 0.0;
  EXPECT_TRUE(std::isinf(semiclassical_nss(p)));
}

TEST(Model, WgsRatiosAndFlag) {
  ModelParams p;
  p.A = 1.05;
  p.B = 1e-4;
  const auto r = wgs_check(p, 100.0);
  EXPECT_NEAR(r.ratios[0], 1e-4, 1e-15);
  EXPECT_NEAR(r.ratios[1], 0.05 / 2.1, 1e-15);
  EXPECT_NEAR(r.ratios[2], 1e-4 * 101 / 2.1, 1e-15);
  EXPECT_TRUE(r.satisfied);

  p.A = 2.0;
  EXPECT_FALSE(wgs_check(p, 100.0).satisfied);
  EXPECT_TRUE(wgs_check(p, 100.0, 0.5).satisfied);
}

}  // namespace
}  // namespace sllm
