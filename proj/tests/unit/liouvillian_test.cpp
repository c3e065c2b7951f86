#include "sllm/liouvillian.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "sllm/error.hpp"

namespace sllm {
namespace {

ModelParams draw(std::mt19937_64& rng, int n_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.A = 0.5 + u(rng);
  p.B = 0.2 * u(rng);
  p.gamma = 0.5 + u(rng);
  p.eta = 0.3 * u(rng);
  p.omega = 2.0 * u(rng) - 1.0;
  p.n_max = n_max;
  return p;
}

ComplexMatrix random_matrix(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  ComplexMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m(i, j) = {g(rng), g(rng)};
  }
  return m;
}

TEST(Liouvillian, LadderOperators) {
  const auto a = annihilation(4);
  const auto ad = creation(4);
  const ComplexMatrix comm = a * ad - ad * a;
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(comm(m, m).real(), 1.0, 1e-14);
  EXPECT_NEAR(comm(4, 4).real(), -4.0, 1e-14);  // truncation artefact
  EXPECT_TRUE((ad * a).isApprox(number_operator(4)));
}

TEST(Liouvillian, GainElementMatchesOperator) {
  ModelParams p;
  p.A = 1.3;
  p.B = 0.07;
  p.n_max = 9;
  const auto o = oracle::operators(p);
  for (int m = 0; m < p.n_max; ++m) EXPECT_NEAR(o.L1(m + 1, m).real(), gain_element(p, m), 1e-14);
  EXPECT_EQ(gain_element(p, p.n_max), 0.0);
  EXPECT_EQ(gain_element(p, -1), 0.0);
}

TEST(Liouvillian, JumpOperatorsMatchTextbookForms) {
  std::mt19937_64 rng(3);
  const auto p = draw(rng, 7);
  const auto ops = build_jump_operators(p);
  const auto o = oracle::operators(p);
  EXPECT_LT((ops.gain - o.L1).norm(), 1e-13);
  EXPECT_LT((ops.dephasing - o.L2).norm(), 1e-13);
  EXPECT_LT((ops.loss - o.L3).norm(), 1e-13);
  EXPECT_LT((hamiltonian(p) - o.H).norm(), 1e-13);
}

TEST(Liouvillian, VectorizeRoundTrip) {
  std::mt19937_64 rng(5);
  const auto m = random_matrix(rng, 6);
  const auto v = vectorize(m);
  EXPECT_EQ(v(1), m(1, 0));  // column stacking
  EXPECT_TRUE(unvectorize(v, 6).isApprox(m));
}

TEST(Liouvillian, FullSuperoperatorMatchesNaiveConstruction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    const auto p = draw(rng, 6);
    const auto full = build_full_superoperator(p);
    const auto naive = oracle::naive_liouvillian(p);
    EXPECT_LT((full - naive).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Liouvillian, FullSuperoperatorRespectsOracleLimit) {
  ModelParams p;
  p.n_max = 13;
  EXPECT_THROW((void)build_full_superoperator(p), InvalidArgument);
  p.n_max = 4;
  EXPECT_NO_THROW((void)build_full_superoperator(p, 4));
}

TEST(Liouvillian, TracePreserving) {
  std::mt19937_64 rng(13);
  const auto p = draw(rng, 7);
  const auto S = build_full_superoperator(p);
  const int d = p.n_max + 1;
  ComplexVector trace_row = ComplexVector::Zero(d * d);
  for (int m = 0; m < d; ++m) trace_row(m * d + m) = 1.0;
  EXPECT_LT((trace_row.transpose() * S).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Liouvillian, ApplyMatchesMasterEquation) {
  std::mt19937_64 rng(17);
  const auto p = draw(rng, 8);
  const auto rho = random_matrix(rng, p.n_max + 1);
  const auto got = apply_lindbladian(p, build_jump_operators(p), rho);
  const auto want = oracle::apply_master_equation(oracle::operators(p), rho);
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Liouvillian, SectorBlocksAreRestrictionsOfFullGenerator) {
  std::mt19937_64 rng(19);
  const auto p = draw(rng, 6);
  const int d = p.n_max + 1;
  const auto S = oracle::naive_liouvillian(p);
  for (int k = -p.n_max; k <= p.n_max; ++k) {
    const auto block = build_sector_block(p, k);
    const auto dense = block.dense();
    ASSERT_EQ(block.dim(), d - std::abs(k));
    for (int i = 0; i < block.dim(); ++i) {
      const auto [m, n] = block.fock_indices(i);
      EXPECT_EQ(m - n, k);
      for (int j = 0; j < block.dim(); ++j) {
        const auto [m2, n2] = block.fock_indices(j);
        EXPECT_NEAR(std::abs(dense(i, j) - S(n * d + m, n2 * d + m2)), 0.0, 1e-12)
            << "k=" << k << " i=" << i << " j=" << j;
      }
    }
  }
}

TEST(Liouvillian, SectorApplyAndEmbed) {
  std::mt19937_64 rng(23);
  const auto p = draw(rng, 9);
  const auto block = build_sector_block(p, 2);
  ComplexVector c(block.dim());
  std::normal_distribution<double> g;
  for (int i = 0; i < block.dim(); ++i) c(i) = {g(rng), g(rng)};
  EXPECT_LT((block.apply(c) - block.dense() * c).norm(), 1e-12);

  const auto rho = embed_sector_vector(c, 2, p.n_max);
  const auto Lrho = apply_lindbladian(p, build_jump_operators(p), rho);
  EXPECT_LT((Lrho - embed_sector_vector(block.apply(c), 2, p.n_max)).norm(), 1e-11);
}

TEST(Liouvillian, NegativeSectorIsConjugate) {
  std::mt19937_64 rng(29);
  const auto p = draw(rng, 8);
  const auto plus = build_sector_block(p, 3).dense();
  const auto minus = build_sector_block(p, -3).dense();
  EXPECT_LT((minus - plus.conjugate()).norm(), 1e-14);
  EXPECT_THROW((void)build_sector_block(p, 9), InvalidArgument);
}

TEST(Liouvillian, ShiftIdentities) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = draw(rng, 10);
    auto base = p;
    base.eta = 0.0;
    base.omega = 0.0;
    auto only_eta = base;
    only_eta.eta = p.eta;
    auto only_omega = base;
    only_omega.omega = p.omega;
    for (int k = 0; k <= 3; ++k) {
      const auto b0 = build_sector_block(base, k).dense();
      const auto be = build_sector_block(only_eta, k).dense();
      const auto bw = build_sector_block(only_omega, k).dense();
      const auto I = ComplexMatrix::Identity(b0.rows(), b0.cols());
      EXPECT_LT((be - b0 + 0.5 * p.eta * k * k * I).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((bw - b0 + Complex(0, p.omega * k) * I).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Liouvillian, NonLindbladGeneratorWithoutSaturationIsLinearLaser) {
  ModelParams p;
  p.A = 0.7;
  p.B = 0.0;
  p.omega = 0.3;
  p.n_max = 6;
  NonLindbladParams q;
  q.A = p.A;
  q.omega = p.omega;
  q.n_max = p.n_max;
  const auto gen = build_nonlindblad_generator(q);
  EXPECT_LT((gen - oracle::naive_liouvillian(p)).cwiseAbs().maxCoeff(), 1e-12);

  const auto null = generator_null_state(gen);
  EXPECT_NEAR(null.rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT(std::abs(null.eigenvalue), 1e-10);
  const auto want = oracle::product_formula(p);
  for (int m = 0; m <= p.n_max; ++m) EXPECT_NEAR(null.rho(m, m).real(), want(m), 1e-10);
}

TEST(Liouvillian, NonLindbladNullStateIsHermitian) {
  NonLindbladParams q;
  q.A = 1.2;
  q.B1 = 0.05;
  q.B2 = 0.02;
  q.n_max = 7;
  const auto null = generator_null_state(build_nonlindblad_generator(q));
  EXPECT_NEAR(null.rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT((null.rho - null.rho.adjoint()).norm(), 1e-9);
}

}  // namespace
}  // namespace sllm
