#include "tridiagonal.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sllm/error.hpp"

namespace sllm::detail {

std::optional<TridiagonalEigen> symmetrized_eigen(const SectorBlock& block, int max_pairs,
                                                  bool want_vectors) {
  const int n = block.dim();
  if (n == 0) return TridiagonalEigen{};

  const double shift = block.diagonal(0).imag();
  for (int i = 0; i < n; ++i) {
    if (block.diagonal(i).imag() != shift) return std::nullopt;
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(block.lower(i) > 0.0) || !(block.upper(i) > 0.0)) return std::nullopt;
  }

  // T = D S D^-1 with s_i = sqrt(l_i u_i) and d_{i+1} / d_i = sqrt(l_i / u_i).
  std::vector<double> diag(n);
  std::vector<double> off(std::max(n - 1, 1));
  std::vector<double> log_d(n, 0.0);
  for (int i = 0; i < n; ++i) diag[i] = block.diagonal(i).real();
  for (int i = 0; i + 1 < n; ++i) {
    off[i] = std::sqrt(block.lower(i)) * std::sqrt(block.upper(i));
    log_d[i + 1] = log_d[i] + 0.5 * (std::log(block.lower(i)) - std::log(block.upper(i)));
  }

  const int wanted = (max_pairs > 0) ? std::min(max_pairs, n) : n;
  const char range = (wanted < n) ? 'I' : 'A';
  const lapack_int il = n - wanted + 1;
  const lapack_int iu = n;
  lapack_int found = 0;
  std::vector<double> w(n);
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(n) * wanted : 1);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));

  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', range, n, diag.data(), off.data(),
                     0.0, 0.0, il, iu, 0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != wanted) {
    std::ostringstream os;
    os << "symmetric tridiagonal eigensolver failed (info " << info << ", sector k = " << block.k
       << ", dim " << n << ")";
    throw NumericalError(os.str());
  }

  TridiagonalEigen out;
  out.values.resize(wanted);
  for (int j = 0; j < wanted; ++j) {
    out.values(j) = Complex{w[wanted - 1 - j], shift};
  }
  if (!want_vectors) return out;

  out.vectors.resize(n, wanted);
  std::vector<double> log_mag(n);
  for (int j = 0; j < wanted; ++j) {
    const double* v = z.data() + static_cast<std::size_t>(wanted - 1 - j) * n;
    double top = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      log_mag[i] = v[i] == 0.0 ? -std::numeric_limits<double>::infinity()
                               : log_d[i] + std::log(std::abs(v[i]));
      top = std::max(top, log_mag[i]);
    }
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = std::copysign(std::exp(log_mag[i] - top), v[i]);
      out.vectors(i, j) = c;
      norm2 += c * c;
    }
    out.vectors.col(j) /= std::sqrt(norm2);
  }
  return out;
}

}  // namespace sllm::detail
