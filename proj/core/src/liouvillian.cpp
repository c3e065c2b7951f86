#include "sllm/liouvillian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "sllm/error.hpp"

namespace sllm {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_oracle_cutoff(int n_max, int oracle_limit) {
  if (n_max > oracle_limit) {
    std::ostringstream os;
    os << "full superoperator requested at n_max = " << n_max << " above the oracle limit "
       << oracle_limit << "; use sector blocks instead";
    throw InvalidArgument(os.str());
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// Superoperator matrices of rho -> X rho, rho -> rho Y and rho -> X rho Y.
ComplexMatrix left_mul(const ComplexMatrix& x) {
  return kron(ComplexMatrix::Identity(x.rows(), x.cols()), x);
}
ComplexMatrix right_mul(const ComplexMatrix& y) {
  return kron(y.transpose(), ComplexMatrix::Identity(y.rows(), y.cols()));
}
ComplexMatrix sandwich(const ComplexMatrix& x, const ComplexMatrix& y) {
  return kron(y.transpose(), x);
}

ComplexMatrix dissipator(const ComplexMatrix& l) {
  const ComplexMatrix ldl = l.adjoint() * l;
  return sandwich(l, l.adjoint()) - 0.5 * left_mul(ldl) - 0.5 * right_mul(ldl);
}

ComplexMatrix commutator_with(const ComplexMatrix& h) { return left_mul(h) - right_mul(h); }

}  // namespace

ComplexMatrix annihilation(int n_max) {
  const int d = n_max + 1;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int m = 1; m < d; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

ComplexMatrix creation(int n_max) { return annihilation(n_max).adjoint(); }

ComplexMatrix number_operator(int n_max) {
  const int d = n_max + 1;
  ComplexMatrix n = ComplexMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) n(m, m) = static_cast<double>(m);
  return n;
}

double gain_element(const ModelParams& p, int m) {
  if (m < 0 || m >= p.n_max) return 0.0;
  const double sqrt_a = std::sqrt(p.A);
  const double level = static_cast<double>(m + 1);
  return std::sqrt(level) * (sqrt_a - p.B * level / (2.0 * sqrt_a));
}

JumpOperators build_jump_operators(const ModelParams& p) {
  validate(p);
  const int d = p.n_max + 1;
  JumpOperators ops{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d),
                    ComplexMatrix::Zero(d, d)};
  const double sqrt_beta = std::sqrt(p.beta());
  const double sqrt_gamma = std::sqrt(p.gamma);
  for (int m = 0; m < d; ++m) {
    if (m < p.n_max) ops.gain(m + 1, m) = gain_element(p, m);
    ops.dephasing(m, m) = sqrt_beta * static_cast<double>(m + 1);
    if (m > 0) ops.loss(m - 1, m) = sqrt_gamma * std::sqrt(static_cast<double>(m));
  }
  return ops;
}

ComplexMatrix hamiltonian(const ModelParams& p) { return p.omega * number_operator(p.n_max); }

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw InvalidArgument("unvectorize: vector length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix build_full_superoperator(const ModelParams& p, int oracle_limit) {
  validate(p);
  check_oracle_cutoff(p.n_max, oracle_limit);
  const JumpOperators ops = build_jump_operators(p);
  ComplexMatrix gen = -kI * commutator_with(hamiltonian(p));
  gen += dissipator(ops.gain);
  gen += dissipator(ops.dephasing);
  gen += dissipator(ops.loss);
  return gen;
}

ComplexMatrix apply_lindbladian(const ModelParams& p, const JumpOperators& ops,
                                const ComplexMatrix& rho) {
  ComplexMatrix out(rho.rows(), rho.cols());
  // H = omega n is diagonal: -i[H, rho]_{rc} = -i omega (r - c) rho_{rc}.
  for (Eigen::Index c = 0; c < rho.cols(); ++c) {
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
      out(r, c) = -kI * p.omega * static_cast<double>(r - c) * rho(r, c);
    }
  }
  for (const ComplexMatrix* l : {&ops.gain, &ops.dephasing, &ops.loss}) {
    const ComplexMatrix ldl = l->adjoint() * (*l);
    out.noalias() += (*l) * rho * l->adjoint();
    out.noalias() -= 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

std::pair<int, int> SectorBlock::fock_indices(int i) const noexcept {
  const int shift = k >= 0 ? k : -k;
  return k >= 0 ? std::pair{i + shift, i} : std::pair{i, i + shift};
}

int SectorBlock::excitation(int i) const noexcept { return i + (k >= 0 ? k : -k); }

ComplexMatrix SectorBlock::dense() const {
  const int d = dim();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) out(i, i) = diagonal(i);
  for (int i = 0; i + 1 < d; ++i) {
    out(i + 1, i) = lower(i);
    out(i, i + 1) = upper(i);
  }
  return out;
}

SectorBlock SectorBlock::conjugate() const {
  SectorBlock out = *this;
  out.k = -k;
  out.diagonal = diagonal.conjugate();
  return out;
}

ComplexVector SectorBlock::apply(const ComplexVector& c) const {
  const int d = dim();
  ComplexVector out = diagonal.cwiseProduct(c);
  for (int i = 0; i + 1 < d; ++i) {
    out(i + 1) += lower(i) * c(i);
    out(i) += upper(i) * c(i + 1);
  }
  return out;
}

SectorBlock build_sector_block(const ModelParams& p, int k) {
  validate(p);
  if (k > p.n_max || k < -p.n_max) {
    std::ostringstream os;
    os << "sector index k = " << k << " outside [-" << p.n_max << ", " << p.n_max << "]";
    throw InvalidArgument(os.str());
  }
  if (k < 0) return build_sector_block(p, -k).conjugate();

  const int d = p.n_max + 1 - k;
  SectorBlock block;
  block.k = k;
  block.n_max = p.n_max;
  block.diagonal.resize(d);
  block.lower.resize(std::max(d - 1, 0));
  block.upper.resize(std::max(d - 1, 0));

  const double kk = static_cast<double>(k);
  const Complex shift{-0.5 * p.beta() * kk * kk, -p.omega * kk};
  for (int i = 0; i < d; ++i) {
    const int m = i + k;
    const int n = i;
    const double fm = gain_element(p, m);
    const double fn = gain_element(p, n);
    const double out_rate = 0.5 * (fm * fm + fn * fn) + 0.5 * p.gamma * static_cast<double>(m + n);
    block.diagonal(i) = Complex{-out_rate, 0.0} + shift;
    if (i + 1 < d) {
      block.lower(i) = fm * fn;
      block.upper(i) = p.gamma * std::sqrt(static_cast<double>(m + 1) * static_cast<double>(n + 1));
    }
  }
  return block;
}

ComplexMatrix embed_sector_vector(const ComplexVector& coeffs, int k, int n_max) {
  const int shift = k >= 0 ? k : -k;
  if (coeffs.size() != n_max + 1 - shift) {
    throw InvalidArgument("embed_sector_vector: coefficient count does not match sector size");
  }
  ComplexMatrix out = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int i = 0; i < coeffs.size(); ++i) {
    if (k >= 0) {
      out(i + shift, i) = coeffs(i);
    } else {
      out(i, i + shift) = coeffs(i);
    }
  }
  return out;
}

ComplexMatrix build_nonlindblad_generator(const NonLindbladParams& p, int oracle_limit) {
  if (!(p.A > 0.0) || !(p.gamma > 0.0) || p.B1 < 0.0 || p.B2 < 0.0 || p.n_max < 2) {
    throw InvalidArgument("non-Lindblad generator: need A > 0, gamma > 0, B1, B2 >= 0, n_max >= 2");
  }
  check_oracle_cutoff(p.n_max, oracle_limit);
  const ComplexMatrix a = annihilation(p.n_max);
  const ComplexMatrix ad = creation(p.n_max);
  const ComplexMatrix aad = a * ad;
  const ComplexMatrix aad2 = aad * aad;

  ComplexMatrix gen = -kI * commutator_with(p.omega * number_operator(p.n_max));
  gen += p.gamma * dissipator(a);
  gen += p.A * dissipator(ad);
  gen += p.B1 * dissipator(aad);
  // K[a] rho = a^dag (a a^dag rho + rho a a^dag) a - ((a a^dag)^2 rho + rho (a a^dag)^2)
  const ComplexMatrix k_term =
      sandwich(ad * aad, a) + sandwich(ad, aad * a) - left_mul(aad2) - right_mul(aad2);
  gen -= p.B2 * k_term;
  return gen;
}

GeneratorNullState generator_null_state(const ComplexMatrix& generator) {
  const auto dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(generator.rows()))));
  if (generator.rows() != generator.cols() || dim * dim != generator.rows()) {
    throw InvalidArgument("generator_null_state: generator is not a square superoperator");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(generator, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("generator_null_state: eigensolver did not converge");
  }
  Eigen::Index best = 0;
  solver.eigenvalues().cwiseAbs().minCoeff(&best);
  ComplexMatrix rho = unvectorize(solver.eigenvectors().col(best), dim);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw NumericalError("generator_null_state: null vector is traceless");
  rho /= tr;
  return {rho, solver.eigenvalues()(best)};
}

}  // namespace sllm
