#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "sllm/model.hpp"

namespace sllm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Truncated Fock-space operators on |0>..|n_max>. The truncation is hard:
// a^dag |n_max> = 0 while a |n_max> = sqrt(n_max) |n_max - 1>.
[[nodiscard]] ComplexMatrix annihilation(int n_max);
[[nodiscard]] ComplexMatrix creation(int n_max);
[[nodiscard]] ComplexMatrix number_operator(int n_max);

// Matrix element of the saturable gain jump: L1 |m> = f(m) |m+1>, with
// f(m) = sqrt(m+1) (sqrt(A) - B (m+1) / (2 sqrt(A))) for m < n_max and
// f(n_max) = 0.
[[nodiscard]] double gain_element(const ModelParams& params, int m);

// The three jump operators of the laser model.
struct JumpOperators {
  ComplexMatrix gain;       // L1 = a^dag (sqrt(A) - B/(2 sqrt(A)) a a^dag)
  ComplexMatrix dephasing;  // L2 = sqrt(beta) a a^dag, kept as sqrt(beta)(m+1) on every level
  ComplexMatrix loss;       // L3 = sqrt(gamma) a
};

[[nodiscard]] JumpOperators build_jump_operators(const ModelParams& params);
[[nodiscard]] ComplexMatrix hamiltonian(const ModelParams& params);

// Vectorization used by every full-space superoperator in the library:
// column stacking, vec(rho)[r + c * d] = rho(r, c) with d = n_max + 1, so
// vec(X rho Y) = (Y^T kron X) vec(rho).
[[nodiscard]] ComplexVector vectorize(const ComplexMatrix& rho);
[[nodiscard]] ComplexMatrix unvectorize(const ComplexVector& v, int dim);

inline constexpr int kDefaultOracleLimit = 12;

// Dense (n_max+1)^2 square matrix of rho -> -i[H, rho] + sum_j D[L_j] rho.
// Cost grows as n_max^6 when diagonalized; restricted to n_max <= oracle_limit.
[[nodiscard]] ComplexMatrix build_full_superoperator(const ModelParams& params,
                                                     int oracle_limit = kDefaultOracleLimit);

// Applies the Lindblad generator directly to a density matrix.
[[nodiscard]] ComplexMatrix apply_lindbladian(const ModelParams& params, const JumpOperators& ops,
                                              const ComplexMatrix& rho);

// The Liouvillian restricted to the k-th diagonal of the density matrix.
//
// For k >= 0 the coefficient index i = 0..dim-1 labels |i+k><i|; for k < 0 it
// labels |i><i+|k||, i.e. the Hermitian-conjugate basis, so that block(-k) is
// the entrywise complex conjugate of block(k). The block is tridiagonal and is
// stored by bands:
//   diagonal(i) = entry (i, i)
//   lower(i)    = entry (i+1, i)   (gain feeding coefficient i into i+1)
//   upper(i)    = entry (i, i+1)   (loss feeding coefficient i+1 into i)
struct SectorBlock {
  int k = 0;
  int n_max = 0;
  ComplexVector diagonal;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(diagonal.size()); }
  // (row, column) of the density-matrix element carried by coefficient i.
  [[nodiscard]] std::pair<int, int> fock_indices(int i) const noexcept;
  // Larger of the two Fock indices carried by coefficient i.
  [[nodiscard]] int excitation(int i) const noexcept;
  [[nodiscard]] ComplexMatrix dense() const;
  [[nodiscard]] SectorBlock conjugate() const;
  [[nodiscard]] ComplexVector apply(const ComplexVector& c) const;
};

[[nodiscard]] SectorBlock build_sector_block(const ModelParams& params, int k);

// Places sector coefficients on the k-th diagonal of an (n_max+1)^2 matrix.
[[nodiscard]] ComplexMatrix embed_sector_vector(const ComplexVector& coeffs, int k, int n_max);

// Cavity generator before the weak-saturation expansion:
//   -i[w a^dag a, rho] + G D[a] + A D[a^dag] + B1 D[a a^dag] - B2 K[a]
// with K[a] rho = a^dag {a a^dag, rho} a - {(a a^dag)^2, rho}. Trace preserving
// but not of Lindblad form.
struct NonLindbladParams {
  double A = 1.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double gamma = 1.0;
  double omega = 0.0;
  int n_max = 8;
};

[[nodiscard]] ComplexMatrix build_nonlindblad_generator(const NonLindbladParams& params,
                                                        int oracle_limit = kDefaultOracleLimit);

// Eigenvector of a full-space generator whose eigenvalue is closest to zero,
// reshaped and normalized to unit trace. For a non-Lindblad generator this is a
// pseudo steady state and need not be positive.
struct GeneratorNullState {
  ComplexMatrix rho;
  Complex eigenvalue;
};

[[nodiscard]] GeneratorNullState generator_null_state(const ComplexMatrix& generator);

}  // namespace sllm
