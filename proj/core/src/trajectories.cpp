#include "sllm/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "sllm/error.hpp"
#include "sllm/parallel.hpp"

namespace sllm {

namespace {

constexpr Complex kI{0.0, 1.0};

// Uniform double in [0, 1) from the top 53 bits.
double uniform(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

// Banded jump operators: (L1 psi)_{m+1} = f_m psi_m, (L2 psi)_m = c_m psi_m,
// (L3 psi)_{m-1} = s_m psi_m.
struct Channels {
  int d = 0;
  std::vector<double> f, c, s;
  std::array<double, 3> beta{};

  void set_gain(const ModelParams& p) {
    for (int m = 0; m < d; ++m) f[m] = gain_element(p, m);
  }

  void apply(int j, const ComplexVector& psi, ComplexVector& out, bool shifted = true) const {
    out.setZero(d);
    if (j == 0) {
      for (int m = 0; m + 1 < d; ++m) out(m + 1) = f[m] * psi(m);
    } else if (j == 1) {
      for (int m = 0; m < d; ++m) out(m) = c[m] * psi(m);
    } else {
      for (int m = 1; m < d; ++m) out(m - 1) = s[m] * psi(m);
    }
    if (shifted && beta[j] != 0.0) out += beta[j] * psi;
  }

  [[nodiscard]] double decay(int m) const { return f[m] * f[m] + c[m] * c[m] + s[m] * s[m]; }
};

class Engine {
 public:
  Engine(const ModelParams& params, const std::array<double, 3>& beta,
         const TrajectoryOptions& options)
      : params_(params), options_(options) {
    validate(params_);
    for (double b : beta) {
      if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("beta_ref entries must be >= 0");
    }
    if (!(options.dt > 0.0) || !(options.t_f > 0.0)) {
      throw InvalidArgument("trajectory needs dt > 0 and t_f > 0");
    }
    if (options.record_every < 1) throw InvalidArgument("record_every must be >= 1");
    ch_.d = params.n_max + 1;
    ch_.f.assign(ch_.d, 0.0);
    ch_.c.resize(ch_.d);
    ch_.s.resize(ch_.d);
    const double sqrt_beta = std::sqrt(params.beta());
    for (int m = 0; m < ch_.d; ++m) {
      ch_.c[m] = sqrt_beta * (m + 1.0);
      ch_.s[m] = std::sqrt(params.gamma * m);
    }
    ch_.beta = beta;
    ch_.set_gain(params_);
    diagonal_ = beta[0] == 0.0 && beta[1] == 0.0 && beta[2] == 0.0;
    shift_ = 0.0;
    for (double b : beta) shift_ += 0.5 * b * b;
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &tmp_, &stage_}) v->resize(ch_.d);
    if (!diagonal_ && !options_.gain) build_propagator();
  }

  TrajectoryRecord run(const ComplexVector& psi0, std::uint64_t seed) {
    if (psi0.size() != ch_.d) throw InvalidArgument("initial state does not match n_max");
    const double norm0 = psi0.norm();
    if (!(std::abs(norm0 - 1.0) < 1e-10)) throw InvalidArgument("initial state is not normalized");

    std::mt19937_64 engine(seed);
    TrajectoryRecord rec;
    rec.seed = seed;
    ComplexVector psi = psi0;
    ComplexVector scratch(ch_.d);
    ComplexVector evolved(ch_.d);
    const auto steps = static_cast<long long>(std::llround(options_.t_f / options_.dt));
    record(rec, 0.0, psi, 1.0);

    for (long long step = 0; step < steps; ++step) {
      const double t = step * options_.dt;
      if (options_.gain) {
        ModelParams p = params_;
        p.A = options_.gain(t);
        if (!(p.A > 0.0)) throw InvalidArgument("gain schedule left A > 0");
        ch_.set_gain(p);
      }

      std::array<double, 3> prob{};
      double total = 0.0;
      for (int j = 0; j < 3; ++j) {
        ch_.apply(j, psi, scratch);
        prob[j] = options_.dt * scratch.squaredNorm();
        total += prob[j];
      }
      if (!(total < kMaxJumpProbability)) {
        std::ostringstream os;
        os << "jump probability per step reached " << total << " at t = " << t
           << "; reduce dt (now " << options_.dt << ")";
        throw NumericalError(os.str());
      }

      // The no-jump branch keeps its exact weight |K psi|^2, K = exp(-i H_eff dt);
      // the remaining probability is split over channels in proportion to p_j.
      no_jump(psi, evolved);
      const double jump_mass = std::max(0.0, 1.0 - evolved.squaredNorm());
      const double u = uniform(engine);
      const double t_next = (step + 1) * options_.dt;
      int fired = -1;
      if (u < jump_mass && total > 0.0) {
        double edge = 0.0;
        fired = 2;
        for (int j = 0; j < 3; ++j) {
          edge += prob[j] / total * jump_mass;
          if (u < edge) {
            fired = j;
            break;
          }
        }
      }
      if (fired >= 0) {
        ch_.apply(fired, psi, scratch);
        psi.swap(scratch);
        rec.jumps.push_back({t_next, fired + 1});
      } else {
        psi.swap(evolved);
      }
      const double nrm = psi.norm();
      if (!(nrm > 1e-200) || !std::isfinite(nrm)) {
        std::ostringstream os;
        os << "state norm collapsed at t = " << t_next;
        throw NumericalError(os.str());
      }
      psi /= nrm;
      if ((step + 1) % options_.record_every == 0) record(rec, t_next, psi, psi.norm());
    }
    return rec;
  }

 private:
  // -i H_eff psi without the constant -1/2 sum beta^2:
  // -i w n psi - 1/2 sum L^dag L psi - sum beta L psi
  void derivative(const ComplexVector& psi, ComplexVector& out) {
    for (int m = 0; m < ch_.d; ++m) {
      out(m) = (-kI * params_.omega * static_cast<double>(m) - 0.5 * ch_.decay(m)) * psi(m);
    }
    for (int j = 0; j < 3; ++j) {
      if (ch_.beta[j] == 0.0) continue;
      ch_.apply(j, psi, tmp_, false);
      out -= ch_.beta[j] * tmp_;
    }
  }

  void build_propagator() {
    ComplexMatrix generator(ch_.d, ch_.d);
    ComplexVector unit = ComplexVector::Zero(ch_.d);
    ComplexVector column(ch_.d);
    for (int m = 0; m < ch_.d; ++m) {
      unit(m) = 1.0;
      derivative(unit, column);
      generator.col(m) = column;
      unit(m) = 0.0;
    }
    propagator_ = (generator * options_.dt).exp() * std::exp(-shift_ * options_.dt);
  }

  void no_jump(const ComplexVector& psi, ComplexVector& out) {
    const double dt = options_.dt;
    if (diagonal_) {
      for (int m = 0; m < ch_.d; ++m) {
        out(m) = psi(m) *
                 std::exp((-kI * params_.omega * static_cast<double>(m) - 0.5 * ch_.decay(m)) * dt);
      }
      return;
    }
    if (propagator_.size() != 0) {
      out.noalias() = propagator_ * psi;
      return;
    }
    // Time-dependent gain: classical RK4 on the linear no-jump equation, with
    // the constant -beta^2/2 part applied exactly.
    derivative(psi, k1_);
    stage_ = psi + 0.5 * dt * k1_;
    derivative(stage_, k2_);
    stage_ = psi + 0.5 * dt * k2_;
    derivative(stage_, k3_);
    stage_ = psi + dt * k3_;
    derivative(stage_, k4_);
    out = psi + (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    out *= std::exp(-shift_ * dt);
  }

  void record(TrajectoryRecord& rec, double t, const ComplexVector& psi, double nrm) const {
    double n = 0.0;
    Complex a = 0.0;
    for (int m = 0; m < ch_.d; ++m) {
      n += m * std::norm(psi(m));
      if (m > 0) a += std::sqrt(static_cast<double>(m)) * std::conj(psi(m - 1)) * psi(m);
    }
    rec.t.push_back(t);
    rec.n_mean.push_back(n);
    rec.x_mean.push_back(a.real());
    rec.norm.push_back(nrm);
  }

  ModelParams params_;
  TrajectoryOptions options_;
  Channels ch_;
  bool diagonal_ = true;
  double shift_ = 0.0;
  ComplexMatrix propagator_;
  ComplexVector k1_, k2_, k3_, k4_, tmp_, stage_;
};

}  // namespace

TrajectoryRecord counting_trajectory(const ModelParams& params, const ComplexVector& psi0,
                                     const TrajectoryOptions& options, std::uint64_t seed) {
  return homodyne_trajectory(params, psi0, {0.0, 0.0, 0.0}, options, seed);
}

TrajectoryRecord homodyne_trajectory(const ModelParams& params, const ComplexVector& psi0,
                                     const std::array<double, 3>& beta_ref,
                                     const TrajectoryOptions& options, std::uint64_t seed) {
  Engine engine(params, beta_ref, options);
  return engine.run(psi0, seed);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<TrajectoryRecord> run_ensemble(const ModelParams& params, const ComplexVector& psi0,
                                           const EnsembleSpec& spec) {
  if (spec.n_traj < 1) throw InvalidArgument("ensemble needs n_traj >= 1");
  const std::array<double, 3> beta =
      spec.kind == Unraveling::counting ? std::array<double, 3>{} : spec.beta_ref;
  std::vector<TrajectoryRecord> out(static_cast<std::size_t>(spec.n_traj));
  parallel_for(out.size(), spec.threads, [&](std::size_t i) {
    Engine engine(params, beta, spec.options);
    out[i] = engine.run(psi0, stream_seed(spec.master_seed, i));
  });
  return out;
}

void SufficientStats::add(double v) noexcept {
  sum += v;
  sum_sq += v * v;
  ++count;
}

void SufficientStats::merge(const SufficientStats& other) noexcept {
  sum += other.sum;
  sum_sq += other.sum_sq;
  count += other.count;
}

double SufficientStats::mean() const noexcept {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

double SufficientStats::standard_error() const noexcept {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
  return std::sqrt(var / n);
}

EnsembleAverage ensemble_average(const std::vector<TrajectoryRecord>& records) {
  if (records.empty()) throw InvalidArgument("ensemble_average: no records");
  const std::size_t len = records.front().t.size();
  for (const auto& r : records) {
    if (r.t.size() != len) throw InvalidArgument("ensemble_average: records differ in length");
  }
  std::vector<SufficientStats> n(len), x(len);
  for (const auto& r : records) {
    for (std::size_t i = 0; i < len; ++i) {
      n[i].add(r.n_mean[i]);
      x[i].add(r.x_mean[i]);
    }
  }
  EnsembleAverage avg;
  avg.t = records.front().t;
  avg.count = records.size();
  for (std::size_t i = 0; i < len; ++i) {
    avg.n_mean.push_back(n[i].mean());
    avg.n_stderr.push_back(n[i].standard_error());
    avg.x_mean.push_back(x[i].mean());
    avg.x_stderr.push_back(x[i].standard_error());
  }
  return avg;
}

Histogram trajectory_histogram(const std::vector<TrajectoryRecord>& records,
                               const HistogramSpec& spec) {
  if (spec.bins < 1 || spec.batches < 2) {
    throw InvalidArgument("histogram needs bins >= 1 and batches >= 2");
  }
  std::vector<double> values;
  SufficientStats batch_means;
  for (const auto& r : records) {
    std::vector<double> kept;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      if (r.t[i] >= spec.burn_in) kept.push_back(r.n_mean[i]);
    }
    const std::size_t per_batch = kept.size() / static_cast<std::size_t>(spec.batches);
    if (per_batch == 0) continue;
    for (int b = 0; b < spec.batches; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < per_batch; ++i) s += kept[b * per_batch + i];
      batch_means.add(s / static_cast<double>(per_batch));
    }
    values.insert(values.end(), kept.begin(), kept.end());
  }
  if (batch_means.count < 2) {
    std::ostringstream os;
    os << "histogram has " << values.size() << " samples after burn-in " << spec.burn_in
       << "; not enough for " << spec.batches << " batches";
    throw InvalidArgument(os.str());
  }

  double lo = spec.lo;
  double hi = spec.hi;
  if (!(hi > lo)) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    if (!(hi > lo)) hi = lo + 1.0;
  }
  Histogram h;
  h.edges.resize(spec.bins + 1);
  for (int b = 0; b <= spec.bins; ++b) h.edges[b] = lo + (hi - lo) * b / spec.bins;
  h.mass.assign(spec.bins, 0.0);
  std::size_t inside = 0;
  for (double v : values) {
    if (v < lo || v > hi) continue;
    const int b = std::min(spec.bins - 1, static_cast<int>((v - lo) / (hi - lo) * spec.bins));
    h.mass[b] += 1.0;
    ++inside;
  }
  if (inside == 0) throw InvalidArgument("histogram range holds no samples");
  for (double& m : h.mass) m /= static_cast<double>(inside);
  h.samples = values.size();
  h.mean = batch_means.mean();
  h.mean_stderr = batch_means.standard_error();
  return h;
}

ComplexVector fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) throw InvalidArgument("fock_state: level outside [0, n_max]");
  ComplexVector psi = ComplexVector::Zero(n_max + 1);
  psi(n) = 1.0;
  return psi;
}

ComplexVector coherent_state(Complex alpha, int n_max) {
  ComplexVector psi(n_max + 1);
  psi(0) = 1.0;
  for (int m = 1; m <= n_max; ++m) psi(m) = psi(m - 1) * alpha / std::sqrt(static_cast<double>(m));
  return psi / psi.norm();
}

}  // namespace sllm
