#include "sllm/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "sllm/error.hpp"
#include "sllm/parallel.hpp"
#include "sllm/steady_state.hpp"
#include "tridiagonal.hpp"

namespace sllm {

namespace {

bool slower(const Complex& a, const Complex& b) {
  const double ra = std::abs(a.real());
  const double rb = std::abs(b.real());
  if (ra != rb) return ra < rb;
  return a.imag() < b.imag();
}

SectorSpectrum sorted_spectrum(const SectorBlock& block, const ComplexVector& values,
                               const ComplexMatrix& vectors, bool with_vectors, int keep) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return slower(values(a), values(b)); });
  if (keep > 0 && keep < static_cast<int>(order.size())) order.resize(keep);

  SectorSpectrum out;
  out.k = block.k;
  out.n_max = block.n_max;
  out.eigenvalues.resize(static_cast<Eigen::Index>(order.size()));
  if (with_vectors) out.eigenvectors.resize(block.dim(), static_cast<Eigen::Index>(order.size()));
  for (std::size_t j = 0; j < order.size(); ++j) {
    out.eigenvalues(j) = values(order[j]);
    if (with_vectors) out.eigenvectors.col(j) = vectors.col(order[j]).normalized();
  }
  out.spurious.assign(order.size(), false);
  return out;
}

SectorSpectrum dense_spectrum(const SectorBlock& block, const EigendecomposeOptions& options) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(block.dense(), options.vectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "dense eigensolver did not converge (sector k = " << block.k << ", dim " << block.dim()
       << ", n_max " << block.n_max << ")";
    throw NumericalError(os.str());
  }
  const ComplexMatrix empty;
  return sorted_spectrum(block, solver.eigenvalues(),
                         options.vectors ? solver.eigenvectors() : empty, options.vectors,
                         options.max_pairs);
}

}  // namespace

SectorSpectrum eigendecompose(const SectorBlock& block, const ModelParams& params,
                              const EigendecomposeOptions& options) {
  if (block.dim() < 1) throw InvalidArgument("eigendecompose: empty block");
  SectorSpectrum spectrum;
  if (auto fast = detail::symmetrized_eigen(block, options.max_pairs, options.vectors)) {
    spectrum = sorted_spectrum(block, fast->values, fast->vectors, options.vectors, 0);
    spectrum.structured = true;
  } else {
    spectrum = dense_spectrum(block, options);
  }
  if (!options.vectors) return spectrum;
  return filter_spurious(std::move(spectrum), params, options.spurious_weight);
}

double spurious_level(const ModelParams& p) {
  const double cap = 0.9 * static_cast<double>(p.n_max);
  if (p.B == 0.0) return cap;
  return std::min(2.0 * p.A / p.B - 1.0, cap);
}

SectorSpectrum filter_spurious(SectorSpectrum spectrum, const ModelParams& params,
                               double weight_threshold) {
  const double level = spurious_level(params);
  const int shift = std::abs(spectrum.k);
  spectrum.spurious.assign(spectrum.eigenvalues.size(), false);
  if (spectrum.eigenvectors.cols() != spectrum.eigenvalues.size()) return spectrum;
  for (Eigen::Index j = 0; j < spectrum.eigenvectors.cols(); ++j) {
    const auto col = spectrum.eigenvectors.col(j);
    double high = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (static_cast<double>(i + shift) > level) high += std::norm(col(i));
    }
    spectrum.spurious[j] = high / col.squaredNorm() > weight_threshold;
  }
  return spectrum;
}

Complex sector_level(const SectorSpectrum& spectrum, int j) {
  int seen = 0;
  for (int i = 0; i < spectrum.size(); ++i) {
    if (spectrum.spurious[i]) continue;
    if (seen == j) return spectrum.eigenvalues(i);
    ++seen;
  }
  std::ostringstream os;
  os << "sector k = " << spectrum.k << " has only " << seen << " non-spurious eigenvalues, level "
     << j << " requested";
  throw NumericalError(os.str());
}

GapReport liouvillian_gap(const std::vector<SectorSpectrum>& spectra) {
  GapReport report;
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& s : spectra) {
    bool sector_found = false;
    for (int i = 0; i < s.size(); ++i) {
      if (s.spurious[i]) continue;
      const Complex lambda = s.eigenvalues(i);
      if (std::abs(lambda) < kZeroTolerance) continue;
      if (!sector_found) {
        report.per_sector[s.k] = lambda;
        sector_found = true;
      }
      if (std::abs(lambda.real()) < best) {
        best = std::abs(lambda.real());
        report.gap = lambda;
        report.sector_of_gap = s.k;
        found = true;
      }
    }
  }
  if (!found) throw NumericalError("liouvillian_gap: every eigenvalue is spurious or zero");
  return report;
}

std::vector<SectorSpectrum> sector_spectra(const ModelParams& params, int k_max,
                                           const EigendecomposeOptions& options) {
  std::vector<SectorSpectrum> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    out.push_back(eigendecompose(build_sector_block(params, k), params, options));
  }
  return out;
}

CollapseResult collapse_sweep(const ModelParams& base, const CollapseSweepSpec& spec) {
  if (spec.A_grid.empty() || spec.N_list.empty() || spec.sectors.empty() || spec.levels.empty()) {
    throw InvalidArgument("collapse_sweep: A_grid, N_list, sectors and levels must be non-empty");
  }
  const int top_level = *std::max_element(spec.levels.begin(), spec.levels.end());
  // Headroom for pairs that the spurious filter removes.
  const int pairs = top_level + 1 + 8;

  const std::size_t n_points = spec.N_list.size() * spec.A_grid.size();
  const std::size_t per_point = spec.sectors.size() * spec.levels.size();
  CollapseResult result;
  result.rows.resize(n_points * per_point);

  parallel_for(n_points, spec.threads, [&](std::size_t point) {
    const double N = spec.N_list[point / spec.A_grid.size()];
    const double A = spec.A_grid[point % spec.A_grid.size()];
    CollapseRow* rows = result.rows.data() + point * per_point;
    for (std::size_t s = 0; s < spec.sectors.size(); ++s) {
      for (std::size_t l = 0; l < spec.levels.size(); ++l) {
        CollapseRow& row = rows[s * spec.levels.size() + l];
        row.N = N;
        row.A = A;
        row.k = spec.sectors[s];
        row.j = spec.levels[l];
      }
    }
    try {
      ModelParams p = apply_scaling(base, N, base.mu);
      p.A = A * p.gamma;
      p.n_max = spec.n_max > 0 ? spec.n_max : recommended_cutoff(p);
      for (std::size_t s = 0; s < spec.sectors.size(); ++s) {
        const int k = spec.sectors[s];
        SectorSpectrum sp;
        std::string failure;
        try {
          sp = eigendecompose(build_sector_block(p, k), p, {pairs, true, 0.5});
        } catch (const Error& e) {
          failure = e.what();
        }
        for (std::size_t l = 0; l < spec.levels.size(); ++l) {
          CollapseRow& row = rows[s * spec.levels.size() + l];
          row.n_max = p.n_max;
          if (!failure.empty()) {
            row.failed = true;
            row.error = failure;
            continue;
          }
          try {
            row.lambda = sector_level(sp, row.j);
          } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
          }
        }
      }
    } catch (const Error& e) {
      for (std::size_t r = 0; r < per_point; ++r) {
        rows[r].failed = true;
        rows[r].error = e.what();
      }
    }
  });

  for (double N : spec.N_list) {
    for (int k : spec.sectors) {
      for (int j : spec.levels) {
        CollapseMinimum m{N, k, j, std::numeric_limits<double>::infinity(), 0.0};
        for (const auto& row : result.rows) {
          if (row.failed || row.N != N || row.k != k || row.j != j) continue;
          if (std::abs(row.lambda.real()) < m.min_abs_re) {
            m.min_abs_re = std::abs(row.lambda.real());
            m.argmin_A = row.A;
          }
        }
        result.minima.push_back(m);
      }
    }
  }
  return result;
}

}  // namespace sllm
