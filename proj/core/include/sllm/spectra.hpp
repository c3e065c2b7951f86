#pragma once

#include <map>
#include <string>
#include <vector>

#include "sllm/liouvillian.hpp"
#include "sllm/model.hpp"

namespace sllm {

// Eigenpairs of one sector block, sorted by ascending |Re lambda| with ties
// broken by ascending Im lambda. Eigenvectors are sector coefficient vectors
// of unit 2-norm, one per column.
struct SectorSpectrum {
  int k = 0;
  int n_max = 0;
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;
  std::vector<bool> spurious;
  bool structured = false;  // true when solved through the symmetric tridiagonal path

  [[nodiscard]] int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

struct EigendecomposeOptions {
  int max_pairs = 0;  // 0 keeps every eigenpair
  bool vectors = true;
  double spurious_weight = 0.5;
};

// Eigenvalues below this modulus count as zero (the steady state).
inline constexpr double kZeroTolerance = 1e-10;

// Eigendecomposition of a sector block with spurious flags applied. When
// max_pairs > 0 only the slowest pairs are kept; this is exact on the
// structured path and a truncation of the sorted dense result otherwise.
[[nodiscard]] SectorSpectrum eigendecompose(const SectorBlock& block, const ModelParams& params,
                                            const EigendecomposeOptions& options = {});

// Fock level above which eigenvector weight is treated as a cutoff artifact:
// min(2A/B - 1, 0.9 n_max).
[[nodiscard]] double spurious_level(const ModelParams& params);

// Flags pairs whose weight on coefficients with excitation above
// spurious_level exceeds weight_threshold.
[[nodiscard]] SectorSpectrum filter_spurious(SectorSpectrum spectrum, const ModelParams& params,
                                             double weight_threshold = 0.5);

// j-th non-spurious eigenvalue of a sector. In sector 0, level 0 is the
// steady state and level 1 the slowest decaying mode. Throws when fewer than
// j + 1 non-spurious pairs are available.
[[nodiscard]] Complex sector_level(const SectorSpectrum& spectrum, int j);

struct GapReport {
  Complex gap;
  int sector_of_gap = 0;
  std::map<int, Complex> per_sector;  // lambda_0^(k) for k != 0, lambda_1^(0) for k = 0
};

// Non-spurious eigenvalue with the smallest nonzero |Re| across the given
// sectors. Throws when no candidate survives the filter.
[[nodiscard]] GapReport liouvillian_gap(const std::vector<SectorSpectrum>& spectra);

// Spectra for sectors 0..k_max of one parameter point.
[[nodiscard]] std::vector<SectorSpectrum> sector_spectra(const ModelParams& params, int k_max,
                                                         const EigendecomposeOptions& options = {});

struct CollapseRow {
  double N = 1.0;
  double A = 0.0;
  int k = 0;
  int j = 0;
  int n_max = 0;
  Complex lambda;
  bool spurious = false;
  bool failed = false;
  std::string error;
};

struct CollapseMinimum {
  double N = 1.0;
  int k = 0;
  int j = 0;
  double min_abs_re = 0.0;
  double argmin_A = 0.0;
};

struct CollapseResult {
  std::vector<CollapseRow> rows;
  std::vector<CollapseMinimum> minima;
};

struct CollapseSweepSpec {
  std::vector<double> A_grid;  // A in units of gamma, applied after scaling
  std::vector<double> N_list;
  std::vector<int> sectors;
  std::vector<int> levels;
  int n_max = 0;  // 0 selects the cutoff per grid point
  int threads = 1;
};

// For every (N, A): scale the base parameters with mu = 0, select the cutoff,
// solve the requested sectors and record lambda_j^(k). Failed points become
// rows with failed = true. Rows are ordered by (N, A, k, j) as given.
[[nodiscard]] CollapseResult collapse_sweep(const ModelParams& base, const CollapseSweepSpec& spec);

}  // namespace sllm
