#include "sllm/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sllm/error.hpp"

namespace sllm {

void validate(const ModelParams& p) {
  auto fail = [](const char* what, double value) {
    std::ostringstream os;
    os << "invalid model parameter: " << what << " (got " << value << ")";
    throw InvalidArgument(os.str());
  };
  if (!(p.A > 0.0)) fail("A must be > 0", p.A);
  if (!(p.B >= 0.0)) fail("B must be >= 0", p.B);
  if (!(p.gamma > 0.0)) fail("gamma must be > 0", p.gamma);
  if (!(p.eta >= 0.0)) fail("eta must be >= 0", p.eta);
  if (!(p.N > 0.0)) fail("N must be > 0", p.N);
  if (!std::isfinite(p.omega) || !std::isfinite(p.mu)) fail("omega and mu must be finite", p.omega);
  if (p.n_max < 2) fail("n_max must be >= 2", p.n_max);
}

ModelParams apply_scaling(const ModelParams& params, double N, double mu) {
  if (!(N > 0.0) || !std::isfinite(N)) {
    std::ostringstream os;
    os << "scaling parameter N must be positive and finite (got " << N << ")";
    throw InvalidArgument(os.str());
  }
  ModelParams out = params;
  const double up = std::pow(N, mu);
  out.A = params.A * up;
  out.B = params.B / std::pow(N, 1.0 - mu);
  out.gamma = params.gamma * up;
  out.N = params.N * N;
  out.mu = mu;
  return out;
}

double semiclassical_nss(const ModelParams& p) {
  const double excess = p.A - p.gamma - p.eta;
  if (excess <= 0.0) return 0.0;
  if (p.B == 0.0) return std::numeric_limits<double>::infinity();
  return excess / p.B;
}

WgsReport wgs_check(const ModelParams& p, double n_ref, double threshold) {
  WgsReport report;
  report.threshold = threshold;
  report.ratios[0] = p.B / p.gamma;
  report.ratios[1] = std::abs(p.A - p.gamma) / (2.0 * p.A);
  report.ratios[2] = p.B * (n_ref + 1.0) / (2.0 * p.A);
  report.satisfied = true;
  for (double r : report.ratios) {
    if (r > threshold * (1.0 + kWgsSlack)) report.satisfied = false;
  }
  return report;
}

}  // namespace sllm
