#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sllm/liouvillian.hpp"
#include "sllm/model.hpp"

namespace sllm {

// Radial steady-state P function
//   P(r) = exp[(r^2 / A)(A - gamma - B r^2 / 2)] / (2 pi Norm)
// normalized so that the integral of P(r) 2 pi r dr is 1. Depends on A, B and
// gamma only.
class SteadyPFunction {
 public:
  explicit SteadyPFunction(const ModelParams& params);

  [[nodiscard]] double operator()(double r) const;
  // Exponent (r^2 / A)(A - gamma - B r^2 / 2).
  [[nodiscard]] double exponent(double r) const noexcept;
  // Integral of r^(2m) P(r) 2 pi r dr, i.e. <a^dag^m a^m> in the P representation.
  [[nodiscard]] double moment(int m) const;
  [[nodiscard]] double mean_photon_number() const { return moment(1); }
  [[nodiscard]] double log_norm() const noexcept { return log_norm_; }

 private:
  // Integral of u^m exp(g(u) - g_max) du over u = r^2 >= 0.
  [[nodiscard]] double scaled_integral(int m) const;

  double a_ = 0.0;  // linear coefficient of the exponent in u
  double b_ = 0.0;  // quadratic coefficient, exponent = a u - b u^2
  double u_peak_ = 0.0;
  double g_max_ = 0.0;
  double u_end_ = 0.0;
  double log_norm_ = 0.0;
};

inline constexpr double kQuadratureTolerance = 1e-10;

[[nodiscard]] double p_ss_radial(double r, const ModelParams& params);

// Phase diffusion coefficient A / (2 n_ss) + beta / 2.
[[nodiscard]] double diffusion_coefficient(const ModelParams& params, double n_ss);

struct GridSpec {
  double re_min = -3.0;
  double re_max = 3.0;
  double im_min = -3.0;
  double im_max = 3.0;
  int nx = 61;
  int ny = 61;
};

struct PhaseSpaceGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  Eigen::MatrixXd values;  // values(iy, ix) at alpha = re_axis[ix] + i im_axis[iy]
  double max_imag = 0.0;   // largest discarded imaginary part

  // Trapezoidal integral over the grid.
  [[nodiscard]] double integral() const;
};

// Fraction of n_max that |alpha|^2 may reach before the truncated space is
// considered unreliable.
inline constexpr double kWignerReach = 0.8;

// <m|D(beta)|n> from the associated-Laguerre closed form, evaluated with a
// normalized three-term recurrence.
[[nodiscard]] Complex displacement_element(Complex beta, int m, int n);

// W(alpha) = (1/pi) Tr[D(alpha) exp(i pi n) D(alpha)^dag M] on the grid.
// Only the diagonals of M that carry nonzero entries are visited.
[[nodiscard]] PhaseSpaceGrid wigner_of_matrix(const ComplexMatrix& M, const GridSpec& grid,
                                              int threads = 1);

// Wigner map of a sector eigenmatrix: the coefficients are placed on
// diagonal k and symmetrized as rho_k + rho_k^dag before the transform, so a
// steady state integrates to 1.
[[nodiscard]] PhaseSpaceGrid wigner_of_eigenmatrix(const ComplexVector& coeffs, int k, int n_max,
                                                   const GridSpec& grid, int threads = 1);

}  // namespace sllm
