#include "sllm/dynamics.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "sllm/error.hpp"
#include "sllm/parallel.hpp"

namespace sllm {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

void check_time_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidArgument("time grid is empty");
  if (t_grid.front() != 0.0) throw InvalidArgument("time grid must start at t = 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1]))
      throw InvalidArgument("time grid must be strictly increasing");
  }
}

template <class System, class Observer>
void integrate(System system, State& x, const std::vector<double>& t_grid,
               const IntegratorOptions& opt, Observer observer) {
  if (t_grid.size() == 1) {
    observer(x, t_grid.front());
    return;
  }
  auto stepper =
      odeint::make_dense_output(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  const double dt0 = std::min(1e-3, (t_grid[1] - t_grid[0]) / 10.0);
  try {
    odeint::integrate_times(stepper, system, x, t_grid.begin(), t_grid.end(), dt0, observer,
                            odeint::max_step_checker(opt.max_steps_per_output));
  } catch (const odeint::odeint_error& e) {
    throw NumericalError(std::string("time integration failed: ") + e.what());
  }
}

void check_trace(double trace, double t, double tol) {
  if (!(std::abs(trace - 1.0) <= tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "trace drifted to " << trace << " at t = " << t;
    throw NumericalError(os.str());
  }
}

ModelParams at_gain(const ModelParams& params, const GainSchedule& gain, double t) {
  if (!gain) return params;
  ModelParams p = params;
  p.A = gain(t);
  if (!(p.A > 0.0)) {
    std::ostringstream os;
    os << "gain schedule reached A = " << p.A << " at t = " << t;
    throw InvalidArgument(os.str());
  }
  return p;
}

}  // namespace

std::vector<Sector0Sample> evolve_sector0(const DiagonalState& p0, const ModelParams& params,
                                          const GainSchedule& gain,
                                          const std::vector<double>& t_grid,
                                          const IntegratorOptions& options) {
  validate(params);
  check_time_grid(t_grid);
  const int d = params.n_max + 1;
  if (p0.p.size() != d) throw InvalidArgument("initial populations do not match n_max");

  // f(m)^2 = x (sqrt(A) - B x / (2 sqrt(A)))^2 with x = m + 1; f(n_max) = 0.
  std::vector<double> birth(d, 0.0);
  const auto fill_birth = [&](double A) {
    const double sqrt_a = std::sqrt(A);
    const double slope = params.B / (2.0 * sqrt_a);
    for (int m = 0; m + 1 < d; ++m) {
      const double x = m + 1.0;
      const double g = sqrt_a - slope * x;
      birth[m] = x * g * g;
    }
  };
  fill_birth(params.A);

  auto system = [&](const State& x, State& dx, double t) {
    if (gain) fill_birth(at_gain(params, gain, t).A);
    for (int m = 0; m < d; ++m) {
      double v = -(birth[m] + params.gamma * m) * x[m];
      if (m > 0) v += birth[m - 1] * x[m - 1];
      if (m + 1 < d) v += params.gamma * (m + 1) * x[m + 1];
      dx[m] = v;
    }
  };

  std::vector<Sector0Sample> out;
  out.reserve(t_grid.size());
  auto observer = [&](const State& x, double t) {
    Sector0Sample s;
    s.t = t;
    s.state.p = Eigen::Map<const Eigen::VectorXd>(x.data(), d);
    check_trace(s.state.p.sum(), t, options.trace_tol);
    s.n_mean = mean_photon_number(s.state);
    out.push_back(std::move(s));
  };

  State x(p0.p.data(), p0.p.data() + d);
  integrate(system, x, t_grid, options, observer);
  return out;
}

std::vector<FullSample> evolve_full(const ComplexMatrix& rho0, const ModelParams& params,
                                    const std::vector<double>& t_grid, const GainSchedule& gain,
                                    const IntegratorOptions& options, int limit) {
  validate(params);
  check_time_grid(t_grid);
  if (params.n_max > limit) {
    std::ostringstream os;
    os << "full evolution requested at n_max = " << params.n_max << " above the limit " << limit;
    throw InvalidArgument(os.str());
  }
  const int d = params.n_max + 1;
  if (rho0.rows() != d || rho0.cols() != d) {
    throw InvalidArgument("initial density matrix does not match n_max");
  }

  JumpOperators ops = build_jump_operators(params);
  auto system = [&](const State& x, State& dx, double t) {
    if (gain) ops = build_jump_operators(at_gain(params, gain, t));
    const Eigen::Map<const ComplexMatrix> rho(reinterpret_cast<const Complex*>(x.data()), d, d);
    Eigen::Map<ComplexMatrix> drho(reinterpret_cast<Complex*>(dx.data()), d, d);
    drho = apply_lindbladian(params, ops, rho);
  };

  std::vector<FullSample> out;
  out.reserve(t_grid.size());
  auto observer = [&](const State& x, double t) {
    FullSample s;
    s.t = t;
    s.rho = Eigen::Map<const ComplexMatrix>(reinterpret_cast<const Complex*>(x.data()), d, d);
    check_trace(s.rho.trace().real(), t, options.trace_tol);
    out.push_back(std::move(s));
  };

  State x(2 * static_cast<std::size_t>(d) * d);
  Eigen::Map<ComplexMatrix>(reinterpret_cast<Complex*>(x.data()), d, d) = rho0;
  integrate(system, x, t_grid, options, observer);
  return out;
}

Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  return (op * rho).trace();
}

double RampProtocol::gain(double t) const noexcept {
  const double step = gamma * t / t_f;
  return direction == RampDirection::up ? 0.5 * gamma + step : 1.5 * gamma - step;
}

int ramp_cutoff(const ModelParams& params, double A_lo, double A_hi) {
  ModelParams hi = params;
  hi.A = A_hi;
  int n_max = std::max(30, static_cast<int>(std::ceil(1.25 * mass_level(hi))));
  if (params.B > 0.0) {
    const double stable = 2.0 * (A_lo + std::sqrt(A_lo * params.gamma)) / params.B;
    n_max = std::min(n_max, static_cast<int>(std::floor(0.9 * stable)) - 1);
  }
  if (n_max < 2) throw InvalidArgument("ramp range leaves no usable Fock cutoff");
  return n_max;
}

HysteresisResult hysteresis(const ModelParams& params, double t_f, int samples, int n_max,
                            int threads, const IntegratorOptions& options) {
  if (!(t_f > 0.0)) throw InvalidArgument("hysteresis: t_f must be > 0");
  if (samples < 2) throw InvalidArgument("hysteresis: need at least 2 samples");

  HysteresisResult result;
  ModelParams p = params;
  p.A = 1.5 * p.gamma;
  result.n_max = n_max > 0 ? n_max : ramp_cutoff(p, 0.5 * p.gamma, 1.5 * p.gamma);
  p.n_max = result.n_max;

  std::vector<double> t_grid(samples);
  for (int i = 0; i < samples; ++i) t_grid[i] = t_f * i / (samples - 1);

  const RampProtocol ramps[2] = {{RampDirection::up, t_f, p.gamma},
                                 {RampDirection::down, t_f, p.gamma}};
  std::vector<HysteresisSample>* branches[2] = {&result.up, &result.down};
  parallel_for(2, threads, [&](std::size_t b) {
    const RampProtocol ramp = ramps[b];
    ModelParams start = p;
    start.A = ramp.start();
    const DiagonalState p0 = steady_state(start);
    const auto run =
        evolve_sector0(p0, start, [ramp](double t) { return ramp.gain(t); }, t_grid, options);
    for (const auto& s : run) {
      branches[b]->push_back({s.t, ramp.gain(s.t) / p.gamma, s.n_mean});
    }
  });

  // Up sample i and down sample samples-1-i sit at the same A.
  double area = 0.0;
  for (int i = 0; i + 1 < samples; ++i) {
    const auto gap = [&](int j) {
      return std::abs(result.up[j].n_mean - result.down[samples - 1 - j].n_mean) / p.N;
    };
    const double dA = result.up[i + 1].A_over_gamma - result.up[i].A_over_gamma;
    area += 0.5 * (gap(i) + gap(i + 1)) * dA;
  }
  result.loop_area = area;
  return result;
}

double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& y, double t_start) {
  if (t.size() != y.size()) throw InvalidArgument("fit_decay_rate: size mismatch");
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_start || y[i] == 0.0) continue;
    const double ly = std::log(std::abs(y[i]));
    n += 1;
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  const double denom = n * stt - st * st;
  if (n < 2 || denom <= 0.0) throw InvalidArgument("fit_decay_rate: fewer than two usable samples");
  return -(n * sty - st * sy) / denom;
}

}  // namespace sllm
