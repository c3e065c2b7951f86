#include "scenarios.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "csv.hpp"
#include "sllm/dynamics.hpp"
#include "sllm/error.hpp"
#include "sllm/liouvillian.hpp"
#include "sllm/parallel.hpp"
#include "sllm/phase_space.hpp"
#include "sllm/spectra.hpp"
#include "sllm/steady_state.hpp"
#include "sllm/trajectories.hpp"

namespace sllm::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw ConfigError("key '" + key + "': " + what, 0, key);
}

void require_positive(const Settings& s, const std::string& key) {
  if (!(s.number(key) > 0.0)) invalid(key, "must be > 0");
}

void require_at_least(const Settings& s, const std::string& key, long long lo) {
  if (s.integer(key) < lo) invalid(key, "must be >= " + std::to_string(lo));
}

void require_nonempty(const Settings& s, const std::string& key) {
  if (s.json().at(key).empty()) invalid(key, "must not be empty");
}

void require_one_of(const Settings& s, const std::string& key, std::vector<std::string> allowed) {
  const auto v = s.text(key);
  if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  invalid(key, "'" + v + "' is not one of {" + list + "}");
}

std::vector<double> positive_list(const Settings& s, const std::string& key) {
  auto v = s.numbers(key);
  for (double x : v) {
    if (!(x > 0.0)) invalid(key, "entries must be > 0");
  }
  return v;
}

int cutoff_override(const Settings& s) { return static_cast<int>(s.integer("n_max")); }

// Model parameters at one (N, A/gamma) point, with the cutoff resolved.
ModelParams point_params(const Settings& s, double N, double A_over_gamma) {
  ModelParams p = apply_scaling(base_params(s), N, s.number("mu"));
  p.A = A_over_gamma * p.gamma;
  p.n_max = cutoff_override(s) > 0 ? cutoff_override(s) : recommended_cutoff(p);
  validate(p);
  return p;
}

ModelParams single_params(const Settings& s) {
  ModelParams p = apply_scaling(base_params(s), s.number("N"), s.number("mu"));
  p.n_max = cutoff_override(s) > 0 ? cutoff_override(s) : recommended_cutoff(p);
  validate(p);
  return p;
}

json params_json(const ModelParams& p) {
  return {{"A", p.A},         {"B", p.B}, {"gamma", p.gamma}, {"eta", p.eta},
          {"omega", p.omega}, {"N", p.N}, {"mu", p.mu},       {"n_max", p.n_max}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

void validate_model(const Settings& s) {
  ModelParams p = base_params(s);
  p.n_max = std::max(2, cutoff_override(s));
  validate(p);
  if (cutoff_override(s) != 0 && cutoff_override(s) < 2)
    invalid("n_max", "must be 0 (auto) or >= 2");
}

// spectrum-sweep ------------------------------------------------------------

struct SpectrumPoint {
  ModelParams params;
  std::vector<SectorSpectrum> spectra;
  GapReport gap;
};

RunResult run_spectrum_sweep(const RunContext& ctx) {
  const auto& s = ctx.settings;
  const auto A_grid = positive_list(s, "A_grid");
  const auto N_list = positive_list(s, "N_list");
  const int k_max = static_cast<int>(s.integer("k_max"));
  const int pairs = static_cast<int>(s.integer("pairs"));

  std::vector<SpectrumPoint> points(A_grid.size() * N_list.size());
  parallel_for(points.size(), ctx.threads, [&](std::size_t i) {
    auto& pt = points[i];
    pt.params = point_params(s, N_list[i / A_grid.size()], A_grid[i % A_grid.size()]);
    pt.spectra = sector_spectra(pt.params, k_max, {pairs, true, 0.5});
    pt.gap = liouvillian_gap(pt.spectra);
  });

  CsvWriter spectrum({"N", "A_over_gamma", "k", "j", "re_lambda", "im_lambda", "spurious"});
  CsvWriter gap({"N", "A_over_gamma", "n_max", "k_of_gap", "re_gap", "im_gap"});
  for (const auto& pt : points) {
    const double A = pt.params.A / pt.params.gamma;
    for (int k = -k_max; k <= k_max; ++k) {
      const auto& sp = pt.spectra[std::abs(k)];
      int level = 0;
      for (int i = 0; i < sp.size(); ++i) {
        const Complex z = k < 0 ? std::conj(sp.eigenvalues(i)) : sp.eigenvalues(i);
        const bool spurious = sp.spurious[i];
        spectrum.row(pt.params.N, A, k, spurious ? -1 : level, z.real(), z.imag(), spurious);
        if (!spurious) ++level;
      }
    }
    gap.row(pt.params.N, A, pt.params.n_max, pt.gap.sector_of_gap, pt.gap.gap.real(),
            pt.gap.gap.imag());
  }

  RunResult out;
  out.files = {{"spectrum.csv", spectrum.str()}, {"gap.csv", gap.str()}};
  if (ctx.dump_blocks) {
    CsvWriter blocks(
        {"N", "A_over_gamma", "k", "i", "m", "n", "re_diagonal", "im_diagonal", "lower", "upper"});
    for (const auto& pt : points) {
      for (int k = 0; k <= k_max; ++k) {
        const SectorBlock b = build_sector_block(pt.params, k);
        for (int i = 0; i < b.dim(); ++i) {
          const auto [m, n] = b.fock_indices(i);
          const double lo = i + 1 < b.dim() ? b.lower(i) : 0.0;
          const double up = i + 1 < b.dim() ? b.upper(i) : 0.0;
          blocks.row(pt.params.N, pt.params.A / pt.params.gamma, k, i, m, n, b.diagonal(i).real(),
                     b.diagonal(i).imag(), lo, up);
        }
      }
    }
    out.files.push_back({"blocks.csv", blocks.str()});
  }
  out.summary["points"] = points.size();
  out.summary["n_max_range"] = {
      std::min_element(points.begin(), points.end(),
                       [](auto& a, auto& b) { return a.params.n_max < b.params.n_max; })
          ->params.n_max,
      std::max_element(points.begin(), points.end(), [](auto& a, auto& b) {
        return a.params.n_max < b.params.n_max;
      })->params.n_max};
  return out;
}

// collapse-sweep ------------------------------------------------------------

RunResult run_collapse_sweep(const RunContext& ctx) {
  const auto& s = ctx.settings;
  CollapseSweepSpec spec;
  spec.A_grid = positive_list(s, "A_grid");
  spec.N_list = positive_list(s, "N_list");
  for (auto k : s.integers("sectors")) spec.sectors.push_back(static_cast<int>(k));
  for (auto j : s.integers("levels")) spec.levels.push_back(static_cast<int>(j));
  spec.n_max = cutoff_override(s);
  spec.threads = ctx.threads;

  const auto result = collapse_sweep(base_params(s), spec);

  CsvWriter rows({"N", "A_over_gamma", "k", "j", "re_lambda", "im_lambda", "spurious"});
  std::size_t failed = 0;
  json failures = json::array();
  for (const auto& r : result.rows) {
    if (r.failed) {
      ++failed;
      if (failures.size() < 20) {
        failures.push_back(
            {{"N", r.N}, {"A_over_gamma", r.A}, {"k", r.k}, {"j", r.j}, {"error", r.error}});
      }
      rows.row(r.N, r.A, r.k, r.j, kNaN, kNaN, r.spurious);
    } else {
      rows.row(r.N, r.A, r.k, r.j, r.lambda.real(), r.lambda.imag(), r.spurious);
    }
  }
  CsvWriter minima({"N", "k", "j", "min_abs_re", "argmin_A_over_gamma"});
  for (const auto& m : result.minima) minima.row(m.N, m.k, m.j, m.min_abs_re, m.argmin_A);

  RunResult out;
  out.files = {{"collapse.csv", rows.str()}, {"collapse_minima.csv", minima.str()}};
  out.summary["rows"] = result.rows.size();
  out.summary["failed_rows"] = failed;
  out.summary["failures"] = failures;
  return out;
}

// steady-sweep --------------------------------------------------------------

RunResult run_steady_sweep(const RunContext& ctx) {
  const auto& s = ctx.settings;
  const auto A_grid = positive_list(s, "A_grid");
  const auto N_list = positive_list(s, "N_list");
  auto eta_list = s.numbers("eta_list");
  if (eta_list.empty()) eta_list.push_back(s.number("eta"));

  struct Row {
    double A = 0, N = 0, eta = 0, n = 0, g2 = 0, F = 0;
    int n_max = 0;
  };
  const std::size_t nA = A_grid.size(), nN = N_list.size();
  std::vector<Row> rows(nA * nN * eta_list.size());
  parallel_for(rows.size(), ctx.threads, [&](std::size_t i) {
    Settings local = s;
    const double eta = eta_list[i / (nA * nN)];
    local.override_value("eta", format_number(eta));
    const double N = N_list[(i / nA) % nN];
    const double A = A_grid[i % nA];
    const ModelParams p = point_params(local, N, A);
    const DiagonalState st = steady_state(p);
    rows[i] = {A, N, eta, mean_photon_number(st), g2_zero(st), fano(st), p.n_max};
  });

  CsvWriter csv({"A_over_gamma", "N", "eta", "n_mean", "n_mean_over_N", "g2", "fano"});
  for (const auto& r : rows) csv.row(r.A, r.N, r.eta, r.n, r.n / r.N, r.g2, r.F);
  RunResult out;
  out.files = {{"steady.csv", csv.str()}};
  out.summary["points"] = rows.size();
  return out;
}

// hysteresis ----------------------------------------------------------------

RunResult run_hysteresis(const RunContext& ctx) {
  const auto& s = ctx.settings;
  ModelParams p = apply_scaling(base_params(s), s.number("N"), s.number("mu"));
  p.A = 1.5 * p.gamma;
  p.n_max = std::max(2, cutoff_override(s));
  validate(p);
  const double t_f = s.number("t_f");
  const int samples = static_cast<int>(s.integer("samples"));
  const auto h = hysteresis(p, t_f, samples, cutoff_override(s), ctx.threads);

  CsvWriter csv({"t", "A_over_gamma", "direction", "n_mean", "n_mean_over_N"});
  for (const auto& x : h.up) csv.row(x.t, x.A_over_gamma, "up", x.n_mean, x.n_mean / p.N);
  for (const auto& x : h.down) csv.row(x.t, x.A_over_gamma, "down", x.n_mean, x.n_mean / p.N);

  CsvWriter summary({"N", "eta", "t_f", "n_max", "loop_area"});
  summary.row(p.N, p.eta, t_f, h.n_max, h.loop_area);

  RunResult out;
  out.files = {{"hysteresis.csv", csv.str()}, {"hysteresis_summary.csv", summary.str()}};

  // Steady-state reference on the same A/gamma grid as the up branch.
  if (s.text("steady_reference") == "yes") {
    CsvWriter ref({"A_over_gamma", "N", "eta", "n_mean", "n_mean_over_N", "g2", "fano"});
    std::vector<std::array<double, 4>> vals(h.up.size());
    parallel_for(h.up.size(), ctx.threads, [&](std::size_t i) {
      ModelParams q = p;
      q.A = h.up[i].A_over_gamma * p.gamma;
      q.n_max = h.n_max;
      const DiagonalState st = steady_state(q);
      vals[i] = {h.up[i].A_over_gamma, mean_photon_number(st), g2_zero(st), fano(st)};
    });
    for (const auto& v : vals) ref.row(v[0], p.N, p.eta, v[1], v[1] / p.N, v[2], v[3]);
    out.files.push_back({"steady_reference.csv", ref.str()});
  }
  out.summary["loop_area"] = h.loop_area;
  out.summary["n_max"] = h.n_max;
  out.summary["params"] = params_json(p);
  return out;
}

// trajectory ----------------------------------------------------------------

std::string indexed(const char* stem, int i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d.csv", stem, i);
  return buf;
}

RunResult run_trajectory(const RunContext& ctx) {
  const auto& s = ctx.settings;
  const ModelParams p = single_params(s);

  EnsembleSpec spec;
  spec.kind = s.text("mode") == "homodyne" ? Unraveling::homodyne : Unraveling::counting;
  const auto beta = s.numbers("beta_ref");
  for (int c = 0; c < 3; ++c) spec.beta_ref[c] = beta.size() == 1 ? beta[0] : beta[c];
  spec.n_traj = static_cast<int>(s.integer("n_traj"));
  spec.master_seed = ctx.seed;
  spec.threads = ctx.threads;
  spec.options.t_f = s.number("t_f");
  spec.options.dt = s.number("dt");
  spec.options.record_every = static_cast<int>(s.integer("record_every"));
  if (s.text("ramp") != "none") {
    const RampProtocol ramp{s.text("ramp") == "up" ? RampDirection::up : RampDirection::down,
                            spec.options.t_f, p.gamma};
    spec.options.gain = [ramp](double t) { return ramp.gain(t); };
  }

  ComplexVector psi0;
  const auto initial = s.text("initial");
  if (initial == "vacuum") {
    psi0 = fock_state(0, p.n_max);
  } else if (initial == "fock") {
    const auto n = s.integer("fock_n");
    if (n < 0 || n > p.n_max) invalid("fock_n", "must lie in [0, n_max]");
    psi0 = fock_state(static_cast<int>(n), p.n_max);
  } else {
    psi0 = coherent_state({s.number("alpha_re"), s.number("alpha_im")}, p.n_max);
  }

  const auto records = run_ensemble(p, psi0, spec);

  RunResult out;
  const int keep = static_cast<int>(std::min<long long>(s.integer("write_traj"), spec.n_traj));
  for (int i = 0; i < keep; ++i) {
    const auto& r = records[i];
    CsvWriter traj({"t", "n_mean", "x_mean"});
    for (std::size_t q = 0; q < r.t.size(); ++q) traj.row(r.t[q], r.n_mean[q], r.x_mean[q]);
    out.files.push_back({indexed("trajectory", i), traj.str()});
    if (spec.kind == Unraveling::counting) {
      CsvWriter jumps({"t", "channel"});
      for (const auto& j : r.jumps) jumps.row(j.t, j.channel);
      out.files.push_back({indexed("jumps", i), jumps.str()});
    }
  }

  const auto avg = ensemble_average(records);
  CsvWriter ens({"t", "n_mean", "n_stderr", "x_mean", "x_stderr"});
  for (std::size_t q = 0; q < avg.t.size(); ++q) {
    ens.row(avg.t[q], avg.n_mean[q], avg.n_stderr[q], avg.x_mean[q], avg.x_stderr[q]);
  }
  out.files.push_back({"ensemble.csv", ens.str()});

  std::size_t total_jumps = 0;
  for (const auto& r : records) total_jumps += r.jumps.size();
  out.summary["params"] = params_json(p);
  out.summary["trajectories"] = records.size();
  out.summary["jumps"] = total_jumps;
  out.summary["final_n_mean"] = avg.n_mean.empty() ? kNaN : avg.n_mean.back();
  out.summary["final_n_stderr"] = avg.n_stderr.empty() ? kNaN : avg.n_stderr.back();

  if (s.number("burn_in") >= 0.0) {
    HistogramSpec hs;
    hs.burn_in = s.number("burn_in");
    hs.bins = static_cast<int>(s.integer("bins"));
    hs.batches = static_cast<int>(s.integer("batches"));
    const auto h = trajectory_histogram(records, hs);
    CsvWriter hist({"bin_lo", "bin_hi", "mass"});
    for (std::size_t b = 0; b < h.mass.size(); ++b) hist.row(h.edges[b], h.edges[b + 1], h.mass[b]);
    out.files.push_back({"histogram.csv", hist.str()});
    out.summary["histogram"] = {
        {"mean", h.mean}, {"mean_stderr", h.mean_stderr}, {"samples", h.samples}};
  }
  return out;
}

// wigner --------------------------------------------------------------------

RunResult run_wigner(const RunContext& ctx) {
  const auto& s = ctx.settings;
  const ModelParams p = single_params(s);
  GridSpec g;
  g.re_min = s.number("re_min");
  g.re_max = s.number("re_max");
  g.im_min = s.number("im_min");
  g.im_max = s.number("im_max");
  g.nx = static_cast<int>(s.integer("nx"));
  g.ny = static_cast<int>(s.integer("ny"));

  RunResult out;
  PhaseSpaceGrid w;
  if (s.text("target") == "steady") {
    const DiagonalState st = steady_state(p);
    w = wigner_of_eigenmatrix(st.p.cast<Complex>(), 0, p.n_max, g, ctx.threads);
    out.summary["lambda"] = complex_json({0.0, 0.0});
  } else {
    const int k = static_cast<int>(s.integer("k"));
    const int j = static_cast<int>(s.integer("j"));
    const auto sp = eigendecompose(build_sector_block(p, k), p, {j + 10, true, 0.5});
    int level = 0, column = -1;
    for (int i = 0; i < sp.size() && column < 0; ++i) {
      if (sp.spurious[i]) continue;
      if (level == j) column = i;
      ++level;
    }
    if (column < 0) throw NumericalError("wigner: level " + std::to_string(j) + " not found");
    w = wigner_of_eigenmatrix(sp.eigenvectors.col(column), k, p.n_max, g, ctx.threads);
    out.summary["lambda"] = complex_json(sp.eigenvalues(column));
  }

  CsvWriter csv({"re_alpha", "im_alpha", "w_value"});
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) csv.row(w.re_axis[ix], w.im_axis[iy], w.values(iy, ix));
  }
  out.files = {{"wigner.csv", csv.str()}};
  out.summary["params"] = params_json(p);
  out.summary["integral"] = w.integral();
  out.summary["max_imag"] = w.max_imag;
  return out;
}

// pfunction -----------------------------------------------------------------

RunResult run_pfunction(const RunContext& ctx) {
  const auto& s = ctx.settings;
  const ModelParams p = single_params(s);
  const SteadyPFunction P(p);

  double r_max = s.number("r_max");
  if (r_max <= 0.0) {
    // Walk outward until the density is e^-40 below its peak.
    double peak = P.exponent(0.0), r_peak = 0.0;
    for (double r = 0.01; r < 1e4; r *= 1.05) {
      if (P.exponent(r) > peak) peak = P.exponent(r), r_peak = r;
    }
    r_max = std::max(1.0, r_peak);
    while (P.exponent(r_max) > peak - 40.0) r_max *= 1.05;
  }
  const int points = static_cast<int>(s.integer("points"));

  CsvWriter csv({"r", "p_value"});
  for (int i = 0; i < points; ++i) {
    const double r = r_max * i / (points - 1);
    csv.row(r, P(r));
  }
  const DiagonalState st = steady_state(p);
  RunResult out;
  out.files = {{"pfunction.csv", csv.str()}};
  out.summary["r_max"] = r_max;
  out.summary["n_mean_pfunction"] = P.mean_photon_number();
  out.summary["n_mean_exact"] = mean_photon_number(st);
  return out;
}

// oracle-check --------------------------------------------------------------

RunResult run_oracle_check(const RunContext& ctx) {
  const auto& s = ctx.settings;
  ModelParams p = apply_scaling(base_params(s), s.number("N"), s.number("mu"));
  p.n_max = cutoff_override(s) > 0 ? cutoff_override(s) : 8;
  validate(p);
  const double tol = s.number("tolerance");

  Eigen::ComplexEigenSolver<ComplexMatrix> full(build_full_superoperator(p), false);
  if (full.info() != Eigen::Success) throw NumericalError("oracle-check: full eigensolver failed");
  const ComplexVector ref = full.eigenvalues();

  struct Entry {
    int k, i;
    Complex z;
  };
  std::vector<Entry> sectors;
  for (int k = -p.n_max; k <= p.n_max; ++k) {
    const ComplexMatrix block = build_sector_block(p, k).dense();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(block, false);
    if (es.info() != Eigen::Success)
      throw NumericalError("oracle-check: sector eigensolver failed");
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      sectors.push_back({k, i, es.eigenvalues()(i)});
  }

  const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
  std::vector<bool> used(ref.size(), false);
  double worst = 0.0;
  CsvWriter csv({"k", "i", "re_sector", "im_sector", "re_full", "im_full", "abs_diff"});
  for (const auto& e : sectors) {
    int best = -1;
    double dist = std::numeric_limits<double>::infinity();
    for (int q = 0; q < ref.size(); ++q) {
      if (used[q]) continue;
      const double d = std::abs(ref(q) - e.z);
      if (d < dist) dist = d, best = q;
    }
    if (best < 0) break;
    used[best] = true;
    worst = std::max(worst, dist);
    csv.row(e.k, e.i, e.z.real(), e.z.imag(), ref(best).real(), ref(best).imag(), dist);
  }

  const bool counts_match = static_cast<Eigen::Index>(sectors.size()) == ref.size();
  const bool pass = counts_match && worst <= tol * scale;
  RunResult out;
  out.files = {{"oracle_eigenvalues.csv", csv.str()}};
  out.summary["params"] = params_json(p);
  out.summary["full_count"] = ref.size();
  out.summary["sector_count"] = sectors.size();
  out.summary["max_abs_diff"] = worst;
  out.summary["scale"] = scale;
  out.summary["tolerance"] = tol;
  out.summary["pass"] = pass;
  out.exit_code = pass ? 0 : 5;
  return out;
}

std::vector<KeySpec> model_keys() {
  return {{"scenario", KeyType::text, ""}, {"A", KeyType::number, "1.2"},
          {"B", KeyType::number, "0.1"},   {"gamma", KeyType::number, "1"},
          {"eta", KeyType::number, "0"},   {"omega", KeyType::number, "0"},
          {"mu", KeyType::number, "0"},    {"n_max", KeyType::integer, "0"},
          {"seed", KeyType::integer, "1"}};
}

void validate_sweep(const Settings& s) {
  validate_model(s);
  require_nonempty(s, "A_grid");
  require_nonempty(s, "N_list");
  positive_list(s, "A_grid");
  positive_list(s, "N_list");
}

}  // namespace

ModelParams base_params(const Settings& s) {
  ModelParams p;
  p.A = s.number("A");
  p.B = s.number("B");
  p.gamma = s.number("gamma");
  p.eta = s.number("eta");
  p.omega = s.number("omega");
  p.N = 1.0;
  p.mu = s.number("mu");
  p.n_max = std::max(2, cutoff_override(s));
  return p;
}

std::vector<KeySpec> key_table(const Scenario& scenario) {
  auto keys = model_keys();
  keys.insert(keys.end(), scenario.keys.begin(), scenario.keys.end());
  return keys;
}

const std::vector<Scenario>& scenarios() {
  static const std::vector<Scenario> table = {
      {"spectrum-sweep",
       {{"A_grid", KeyType::number_list, ""},
        {"N_list", KeyType::number_list, "1"},
        {"k_max", KeyType::integer, "3"},
        {"pairs", KeyType::integer, "6"}},
       [](const RunContext& c) {
         validate_sweep(c.settings);
         require_at_least(c.settings, "k_max", 0);
         require_at_least(c.settings, "pairs", 1);
       },
       run_spectrum_sweep},
      {"collapse-sweep",
       {{"A_grid", KeyType::number_list, ""},
        {"N_list", KeyType::number_list, "1"},
        {"sectors", KeyType::integer_list, "0,1,2,3"},
        {"levels", KeyType::integer_list, "0,1,2"}},
       [](const RunContext& c) {
         validate_sweep(c.settings);
         require_nonempty(c.settings, "sectors");
         require_nonempty(c.settings, "levels");
         for (auto k : c.settings.integers("sectors")) {
           if (k < 0) invalid("sectors", "entries must be >= 0");
         }
         for (auto j : c.settings.integers("levels")) {
           if (j < 0) invalid("levels", "entries must be >= 0");
         }
       },
       run_collapse_sweep},
      {"steady-sweep",
       {{"A_grid", KeyType::number_list, ""},
        {"N_list", KeyType::number_list, "1"},
        {"eta_list", KeyType::number_list, ""}},
       [](const RunContext& c) {
         validate_sweep(c.settings);
         for (double e : c.settings.numbers("eta_list")) {
           if (!(e >= 0.0)) invalid("eta_list", "entries must be >= 0");
         }
       },
       run_steady_sweep},
      {"hysteresis",
       {{"N", KeyType::number, "1"},
        {"t_f", KeyType::number, "200"},
        {"samples", KeyType::integer, "401"},
        {"steady_reference", KeyType::text, "yes"}},
       [](const RunContext& c) {
         validate_model(c.settings);
         require_positive(c.settings, "N");
         require_positive(c.settings, "t_f");
         require_at_least(c.settings, "samples", 2);
         require_one_of(c.settings, "steady_reference", {"yes", "no"});
       },
       run_hysteresis},
      {"trajectory",
       {{"N", KeyType::number, "1"},
        {"mode", KeyType::text, "counting"},
        {"n_traj", KeyType::integer, "200"},
        {"t_f", KeyType::number, "10"},
        {"dt", KeyType::number, "1e-3"},
        {"record_every", KeyType::integer, "10"},
        {"beta_ref", KeyType::number_list, "10"},
        {"initial", KeyType::text, "vacuum"},
        {"alpha_re", KeyType::number, "0"},
        {"alpha_im", KeyType::number, "0"},
        {"fock_n", KeyType::integer, "0"},
        {"ramp", KeyType::text, "none"},
        {"write_traj", KeyType::integer, "5"},
        {"burn_in", KeyType::number, "-1"},
        {"bins", KeyType::integer, "50"},
        {"batches", KeyType::integer, "20"}},
       [](const RunContext& c) {
         const auto& s = c.settings;
         validate_model(s);
         require_positive(s, "N");
         require_one_of(s, "mode", {"counting", "homodyne"});
         require_one_of(s, "initial", {"vacuum", "fock", "coherent"});
         require_one_of(s, "ramp", {"none", "up", "down"});
         require_at_least(s, "n_traj", 1);
         require_positive(s, "t_f");
         require_positive(s, "dt");
         require_at_least(s, "record_every", 1);
         require_at_least(s, "write_traj", 0);
         require_at_least(s, "bins", 1);
         require_at_least(s, "batches", 2);
         const auto beta = s.numbers("beta_ref");
         if (beta.size() != 1 && beta.size() != 3) invalid("beta_ref", "needs 1 or 3 entries");
         for (double b : beta) {
           if (!(b >= 0.0) || !std::isfinite(b))
             invalid("beta_ref", "entries must be finite and >= 0");
         }
         if (s.number("burn_in") >= s.number("t_f")) invalid("burn_in", "must be < t_f");
       },
       run_trajectory},
      {"wigner",
       {{"N", KeyType::number, "1"},
        {"target", KeyType::text, "steady"},
        {"k", KeyType::integer, "0"},
        {"j", KeyType::integer, "0"},
        {"re_min", KeyType::number, "-3"},
        {"re_max", KeyType::number, "3"},
        {"im_min", KeyType::number, "-3"},
        {"im_max", KeyType::number, "3"},
        {"nx", KeyType::integer, "61"},
        {"ny", KeyType::integer, "61"}},
       [](const RunContext& c) {
         const auto& s = c.settings;
         validate_model(s);
         require_positive(s, "N");
         require_one_of(s, "target", {"steady", "eigen"});
         require_at_least(s, "k", 0);
         require_at_least(s, "j", 0);
         require_at_least(s, "nx", 2);
         require_at_least(s, "ny", 2);
         if (!(s.number("re_max") > s.number("re_min"))) invalid("re_max", "must exceed re_min");
         if (!(s.number("im_max") > s.number("im_min"))) invalid("im_max", "must exceed im_min");
       },
       run_wigner},
      {"pfunction",
       {{"N", KeyType::number, "1"},
        {"r_max", KeyType::number, "0"},
        {"points", KeyType::integer, "401"}},
       [](const RunContext& c) {
         validate_model(c.settings);
         require_positive(c.settings, "N");
         require_at_least(c.settings, "points", 2);
       },
       run_pfunction},
      {"oracle-check",
       {{"N", KeyType::number, "1"}, {"tolerance", KeyType::number, "1e-8"}},
       [](const RunContext& c) {
         validate_model(c.settings);
         require_positive(c.settings, "N");
         require_positive(c.settings, "tolerance");
         if (cutoff_override(c.settings) > kDefaultOracleLimit) {
           invalid("n_max",
                   "oracle-check is limited to n_max <= " + std::to_string(kDefaultOracleLimit));
         }
       },
       run_oracle_check},
  };
  return table;
}

const Scenario& find_scenario(const std::string& name) {
  for (const auto& sc : scenarios()) {
    if (sc.name == name) return sc;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace sllm::cli
