#include "sllm/phase_space.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sllm/error.hpp"
#include "sllm/parallel.hpp"

namespace sllm {

namespace {

// exp(-745) is below the smallest subnormal double.
constexpr double kExpFloor = 745.0;
constexpr double kRescale = 1e150;

// Walks phi_i = sqrt(i! / (i+a)!) x^(a/2) e^(-x/2) L_i^(a)(x) for i = 0, 1, ...
// The values are held as v * exp(log_scale) so that neither the tiny start
// nor the growth through the forbidden region leaves double range.
class LaguerreWalk {
 public:
  LaguerreWalk(int a, double x) : a_(a), x_(x) {
    if (x == 0.0) {
      log_scale_ = a == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    } else {
      log_scale_ = 0.5 * a * std::log(x) - 0.5 * x - 0.5 * std::lgamma(a + 1.0);
    }
  }

  [[nodiscard]] double value() const { return cur_ * std::exp(log_scale_); }

  void advance() {
    const double n = i_;
    const double next = ((2.0 * n + 1.0 + a_ - x_) * cur_ - std::sqrt(n * (n + a_)) * prev_) /
                        std::sqrt((n + 1.0) * (n + 1.0 + a_));
    prev_ = cur_;
    cur_ = next;
    ++i_;
    if (std::abs(cur_) > kRescale) {
      cur_ /= kRescale;
      prev_ /= kRescale;
      log_scale_ += std::log(kRescale);
    }
  }

 private:
  int a_;
  double x_;
  int i_ = 0;
  double prev_ = 0.0;
  double cur_ = 1.0;
  double log_scale_ = 0.0;
};

}  // namespace

SteadyPFunction::SteadyPFunction(const ModelParams& params) {
  validate(params);
  a_ = (params.A - params.gamma) / params.A;
  b_ = params.B / (2.0 * params.A);
  if (b_ == 0.0 && a_ >= 0.0) {
    throw InvalidArgument("P function is not normalizable for B = 0 at or above threshold");
  }
  u_peak_ = (b_ > 0.0 && a_ > 0.0) ? a_ / (2.0 * b_) : 0.0;
  g_max_ = a_ * u_peak_ - b_ * u_peak_ * u_peak_;
  // Past u_end the integrand is below exp(-745) of its peak.
  if (b_ > 0.0) {
    u_end_ = (a_ + std::sqrt(a_ * a_ + 4.0 * b_ * (kExpFloor - g_max_))) / (2.0 * b_);
  } else {
    u_end_ = kExpFloor / (-a_);
  }
  // Norm = integral of exp(g) r dr = (1/2) integral of exp(g(u)) du.
  log_norm_ = g_max_ + std::log(0.5 * scaled_integral(0));
}

double SteadyPFunction::exponent(double r) const noexcept {
  const double u = r * r;
  return a_ * u - b_ * u * u;
}

double SteadyPFunction::operator()(double r) const {
  if (r < 0.0) throw InvalidArgument("p_ss_radial: r must be >= 0");
  return std::exp(exponent(r) - log_norm_) / (2.0 * std::numbers::pi);
}

double SteadyPFunction::scaled_integral(int m) const {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double u) { return std::pow(u, m) * std::exp(a_ * u - b_ * u * u - g_max_); };
  double total = 0.0;
  const double pieces[3] = {0.0, u_peak_, u_end_};
  for (int s = 0; s < 2; ++s) {
    if (!(pieces[s + 1] > pieces[s])) continue;
    double error = 0.0;
    double l1 = 0.0;
    const double part = gauss_kronrod<double, 61>::integrate(f, pieces[s], pieces[s + 1], 20,
                                                             kQuadratureTolerance, &error, &l1);
    if (!(error <= 10.0 * kQuadratureTolerance * std::max(l1, 1e-300))) {
      std::ostringstream os;
      os << "P-function quadrature did not converge (error " << error << ", integral " << part
         << ")";
      throw NumericalError(os.str());
    }
    total += part;
  }
  return total;
}

double SteadyPFunction::moment(int m) const {
  if (m < 0) throw InvalidArgument("P-function moment order must be >= 0");
  // integral u^m P pi du with P = exp(g - log_norm) / (2 pi)
  return 0.5 * scaled_integral(m) * std::exp(g_max_ - log_norm_);
}

double p_ss_radial(double r, const ModelParams& params) { return SteadyPFunction(params)(r); }

double diffusion_coefficient(const ModelParams& params, double n_ss) {
  if (!(n_ss > 0.0)) throw InvalidArgument("diffusion_coefficient: n_ss must be > 0");
  return params.A / (2.0 * n_ss) + 0.5 * params.beta();
}

double PhaseSpaceGrid::integral() const {
  const auto weights = [](const std::vector<double>& axis) {
    std::vector<double> w(axis.size(), 0.0);
    for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
      const double h = 0.5 * (axis[i + 1] - axis[i]);
      w[i] += h;
      w[i + 1] += h;
    }
    return w;
  };
  const auto wx = weights(re_axis);
  const auto wy = weights(im_axis);
  double total = 0.0;
  for (std::size_t iy = 0; iy < wy.size(); ++iy) {
    for (std::size_t ix = 0; ix < wx.size(); ++ix) total += wx[ix] * wy[iy] * values(iy, ix);
  }
  return total;
}

Complex displacement_element(Complex beta, int m, int n) {
  if (m < 0 || n < 0) throw InvalidArgument("displacement_element: negative Fock index");
  const int a = std::abs(m - n);
  const int low = std::min(m, n);
  const double x = std::norm(beta);
  LaguerreWalk walk(a, x);
  for (int i = 0; i < low; ++i) walk.advance();
  const double theta = std::arg(beta);
  // m >= n: beta^a / |beta|^a; m < n: (-beta*)^a / |beta|^a
  const Complex phase =
      m >= n ? std::polar(1.0, a * theta) : std::polar(a % 2 == 0 ? 1.0 : -1.0, -a * theta);
  return walk.value() * phase;
}

PhaseSpaceGrid wigner_of_matrix(const ComplexMatrix& M, const GridSpec& grid, int threads) {
  if (M.rows() != M.cols() || M.rows() < 1) throw InvalidArgument("wigner: matrix must be square");
  if (grid.nx < 1 || grid.ny < 1) throw InvalidArgument("wigner: grid needs nx, ny >= 1");
  const int n_max = static_cast<int>(M.rows()) - 1;
  const double reach = std::max({grid.re_min * grid.re_min, grid.re_max * grid.re_max}) +
                       std::max({grid.im_min * grid.im_min, grid.im_max * grid.im_max});
  if (!std::isfinite(reach) || reach > kWignerReach * n_max) {
    std::ostringstream os;
    os << "wigner grid reaches |alpha|^2 = " << reach << " beyond " << kWignerReach
       << " n_max = " << kWignerReach * n_max;
    throw InvalidArgument(os.str());
  }

  // Offsets s = m - n of the diagonals of M that carry anything.
  std::vector<int> offsets;
  for (int s = -n_max; s <= n_max; ++s) {
    const int len = n_max + 1 - std::abs(s);
    for (int i = 0; i < len; ++i) {
      if (M(i + std::max(0, s), i + std::max(0, -s)) != 0.0) {
        offsets.push_back(s);
        break;
      }
    }
  }

  PhaseSpaceGrid out;
  const auto axis = [](double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
  };
  out.re_axis = axis(grid.re_min, grid.re_max, grid.nx);
  out.im_axis = axis(grid.im_min, grid.im_max, grid.ny);
  out.values.resize(grid.ny, grid.nx);
  std::vector<double> imag(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);

  parallel_for(imag.size(), threads, [&](std::size_t idx) {
    const int iy = static_cast<int>(idx / grid.nx);
    const int ix = static_cast<int>(idx % grid.nx);
    // D(a) Pi D(a)^dag = D(2a) Pi, so W = (1/pi) sum_mn (-1)^m <n|D(2a)|m> M_mn.
    const Complex beta = 2.0 * Complex{out.re_axis[ix], out.im_axis[iy]};
    const double x = std::norm(beta);
    const double theta = std::arg(beta);
    Complex total = 0.0;
    for (int s : offsets) {
      const int a = std::abs(s);
      const Complex phase =
          s >= 0 ? std::polar(a % 2 == 0 ? 1.0 : -1.0, -a * theta) : std::polar(1.0, a * theta);
      LaguerreWalk walk(a, x);
      Complex diag_sum = 0.0;
      for (int i = 0; i + a <= n_max; ++i) {
        const int m = s >= 0 ? i + a : i;
        const int n = s >= 0 ? i : i + a;
        const double sign = m % 2 == 0 ? 1.0 : -1.0;
        if (M(m, n) != 0.0) diag_sum += sign * walk.value() * M(m, n);
        walk.advance();
      }
      total += phase * diag_sum;
    }
    total /= std::numbers::pi;
    out.values(iy, ix) = total.real();
    imag[idx] = std::abs(total.imag());
  });
  out.max_imag = *std::max_element(imag.begin(), imag.end());
  return out;
}

PhaseSpaceGrid wigner_of_eigenmatrix(const ComplexVector& coeffs, int k, int n_max,
                                     const GridSpec& grid, int threads) {
  const ComplexMatrix rho = embed_sector_vector(coeffs, k, n_max);
  const ComplexMatrix sym = rho + rho.adjoint();
  return wigner_of_matrix(sym, grid, threads);
}

}  // namespace sllm
