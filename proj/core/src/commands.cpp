#include "nncda/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "nncda/checkpoint.hpp"
#include "nncda/diagnostics.hpp"
#include "nncda/ops.hpp"

namespace nncda::cli {

namespace fs = std::filesystem;

std::string resolve_output_dir(const RunConfig& config) {
  fs::path dir = config.io.output_dir;
  if (dir.is_relative()) {
    if (const char* root = std::getenv("NNCDA_OUTPUT_ROOT")) {
      dir = fs::path(root) / dir;
    }
  }
  fs::create_directories(dir);
  return dir.string();
}

double first_time_below(const std::vector<double>& t,
                        const std::vector<double>& values, double threshold) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (values[i] <= threshold) return t[i];
  }
  return std::numeric_limits<double>::quiet_NaN();
}

namespace {

CsvTable energy_series_csv(const EnergySeries& s) {
  CsvTable t;
  t.header = {"t", "energy", "enstrophy"};
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    t.rows.push_back({csv_double(s.t[i]), csv_double(s.energy[i]),
                      csv_double(s.enstrophy[i])});
  }
  return t;
}

void warn_cfl(const RunConfig& config, std::ostream& os) {
  const double cfl = cfl_estimate(config);
  if (cfl > 0.5) {
    os << "warning: advective CFL estimate " << cfl
       << " exceeds 0.5; consider a smaller dt\n";
  }
}

}  // namespace

SpinupOutputs cmd_spinup(const RunConfig& config) {
  validate(config);
  warn_cfl(config, std::cerr);
  const GridPtr grid = config_grid(config);
  const PhysicalParams params = config_params(config, grid);
  const SpinupResult result = spinup(grid, params, config.time.dt,
                                     config.time.t_spinup,
                                     config.time.sample_every);
  const fs::path dir = resolve_output_dir(config);
  SpinupOutputs out;
  out.checkpoint_path = (dir / "reference.nncda").string();
  out.energy_csv_path = (dir / "spinup_energy.csv").string();
  write_checkpoint(out.checkpoint_path, result.state.psi, result.state.t);
  write_csv(out.energy_csv_path, energy_series_csv(result.series));
  out.final_energy = result.series.energy.back();
  if (result.series.t.back() >= 100.0) {
    out.drift = windowed_drift(result.series.t, result.series.energy, 50.0);
  }
  return out;
}

RunOutputs cmd_run(const RunConfig& config,
                   const std::string& reference_checkpoint) {
  validate(config);
  warn_cfl(config, std::cerr);
  const Checkpoint cp = read_checkpoint(reference_checkpoint);
  const GridPtr grid = cp.psi.grid();
  if (grid->n() != config.grid.n || grid->length() != config.grid.L) {
    throw config_error("checkpoint grid does not match the configured grid");
  }
  const PhysicalParams params = config_params(config, grid);
  const NudgingConfig cfg = config_nudging(config, grid);

  SolverState u0{cp.psi, cp.t};
  SolverState v0{SpectralField(grid), cp.t};  // v0 = 0, the standard choice

  const fs::path dir = resolve_output_dir(config);
  DaSnapshotHook hook;
  if (config.io.checkpoint_every > 0) {
    hook = [dir](const SolverState& u, const SolverState& v, long step) {
      std::ostringstream tag;
      tag << std::setw(9) << std::setfill('0') << step;
      write_checkpoint((dir / ("u_" + tag.str() + ".nncda")).string(), u.psi,
                       u.t);
      write_checkpoint((dir / ("v_" + tag.str() + ".nncda")).string(), v.psi,
                       v.t);
    };
  }
  const DaResult result =
      run_da(u0, v0, params, cfg, config.time.dt, config.time.t_end,
             config.time.sample_every, config.io.checkpoint_every, hook);

  RunOutputs out;
  out.errors_csv_path = (dir / "errors.csv").string();
  write_csv(out.errors_csv_path, error_series_csv(result.series));
  write_checkpoint((dir / "u_final.nncda").string(), result.u_final.psi,
                   result.u_final.t);
  write_checkpoint((dir / "v_final.nncda").string(), result.v_final.psi,
                   result.v_final.t);
  out.final_err_H2 = result.series.err_H2.back();
  out.series = std::move(result.series);
  return out;
}

bool CertReport::all_satisfied() const {
  for (const auto& r : rows) {
    if (r.satisfied == 0) return false;
  }
  return true;
}

CertReport check_params_report(const RunConfig& config) {
  validate(config);
  const GridPtr grid = config_grid(config);
  theory::TheoryConstants tc = config_theory(config, grid);
  const NudgingConfig cfg = config_nudging(config, grid);
  const double h = interpolant_h(cfg.interpolant, *grid);

  CertReport rep;
  auto info = [&](const std::string& q, double v) {
    rep.rows.push_back({q, v, "", -1});
  };
  auto cond = [&](const std::string& q, double v, const std::string& req,
                  bool ok) {
    rep.rows.push_back({q, v, req, ok ? 1 : 0});
  };

  info("G", tc.G);
  info("lambda1", tc.lambda1);
  info("h", h);
  const theory::AbsorbingBall ball =
      theory::absorbing_ball(tc.G, tc.nu, tc.lambda1, tc.T, tc.c);
  info("ball_H2", ball.h2);
  info("ball_V2", ball.v2);
  info("ball_Au2", ball.au2);

  const theory::ThresholdsH th = theory::thresholds_H(tc);
  cond("H.mu_min", th.mu_min, "mu > mu_min", tc.mu > th.mu_min);
  cond("H.beta_min", th.beta_min, "beta > beta_min", tc.beta > th.beta_min);
  cond("H.h_max", th.h_max, "h <= h_max", h <= th.h_max);
  info("H.R_ceiling", th.r_ceiling);

  const theory::ThresholdsV tv = theory::thresholds_V(tc);
  info("V.J", tv.J);
  cond("V.mu_min", tv.mu_min, "mu > mu_min", tc.mu > tv.mu_min);
  cond("V.beta_min", tv.beta_min, "beta > beta_min", tc.beta > tv.beta_min);
  cond("V.h_max", tv.h_max, "h <= h_max", h <= tv.h_max);
  info("V.R_ceiling", tv.r_ceiling);

  // Switch times with v0 = 0 and the triangle-inequality M estimate.
  const double f_H2 = std::pow(tc.G * tc.lambda1 * tc.nu * tc.nu, 2);
  const double M = theory::estimate_M(f_H2, tc.beta, tc.alpha, tc.G, tc.nu,
                                      0.0);
  info("M_estimate", M);
  const double t_a = config.time.t_spinup;
  try {
    const double rH = theory::switch_ceiling(tc.beta, tc.gamma, tc.lambda1);
    const double rhsH = theory::rhs_H(tc, 0.0, M, t_a);
    cond("switch_t0_H", theory::switch_time_H(tc, t_a, rhsH, rH),
         "certifiable", true);
  } catch (const std::domain_error&) {
    cond("switch_t0_H", std::numeric_limits<double>::quiet_NaN(),
         "beta too small to certify", false);
  }
  try {
    const double rV = theory::switch_ceiling(tc.beta, tc.gamma, tc.lambda1);
    const double rhsV = theory::rhs_V(tc, 0.0, 0.0, M);
    cond("switch_t0_V", theory::switch_time_V(tc, t_a, rhsV, rV),
         "certifiable", true);
  } catch (const std::domain_error&) {
    cond("switch_t0_V", std::numeric_limits<double>::quiet_NaN(),
         "beta too small to certify", false);
  }
  return rep;
}

int cmd_check_params(const RunConfig& config, bool strict, std::ostream& os) {
  const CertReport rep = check_params_report(config);
  os << std::left << std::setw(16) << "quantity" << std::setw(26) << "value"
     << std::setw(26) << "requirement" << "satisfied\n";
  CsvTable csv;
  csv.header = {"quantity", "value", "requirement", "satisfied"};
  for (const auto& r : rep.rows) {
    const std::string s =
        r.satisfied < 0 ? "-" : (r.satisfied ? "yes" : "NO");
    os << std::left << std::setw(16) << r.quantity << std::setw(26)
       << csv_double(r.value) << std::setw(26) << r.requirement << s << "\n";
    csv.rows.push_back({r.quantity, csv_double(r.value), r.requirement, s});
  }
  const fs::path dir = resolve_output_dir(config);
  write_csv((dir / "certification.csv").string(), csv);
  if (strict && !rep.all_satisfied()) return 4;
  return 0;
}

AnalyzeOutputs cmd_analyze(const std::string& series_csv,
                           const std::string& output_dir, double window,
                           double curvature_tol) {
  const ErrorSeries series = error_series_from_csv(read_csv(series_csv));
  AnalyzeOutputs out;
  out.report = detect_regimes(series, window, curvature_tol);
  fs::create_directories(output_dir);
  out.regimes_csv_path = (fs::path(output_dir) / "regimes.csv").string();
  write_csv(out.regimes_csv_path, regime_report_csv(out.report));
  return out;
}

ReproduceSummary cmd_reproduce(const std::string& scale,
                               const std::vector<std::string>& overrides,
                               std::ostream& os) {
  RunConfig base;
  if (scale == "desk") {
    base = desk_preset();
  } else if (scale == "paper") {
    base = paper_preset();
  } else {
    throw config_error("reproduce scale must be 'desk' or 'paper'");
  }
  for (const auto& o : overrides) apply_override(base, o);
  validate(base);

  ReproduceSummary summary;
  const fs::path dir = resolve_output_dir(base);
  summary.output_dir = dir.string();

  os << "[reproduce] spin-up to t = " << base.time.t_spinup << "\n";
  const SpinupOutputs spin = cmd_spinup(base);
  summary.spinup_drift = spin.drift;

  auto variant_config = [&](const std::string& name) {
    RunConfig c = base;
    c.io.output_dir =
        (fs::path(base.io.output_dir) / name).string();
    return c;
  };

  // Control run: gains off, shortened horizon (divergence shows quickly).
  {
    RunConfig c = variant_config("control");
    c.da.mode = "linear";
    c.da.mu = 0.0;
    c.da.beta = 0.0;
    c.time.t_end = std::min(c.time.t_end, 10.0);
    os << "[reproduce] control run (mu = beta = 0) to t_end = "
       << c.time.t_end << "\n";
    const RunOutputs r = cmd_run(c, spin.checkpoint_path);
    summary.control_initial_err = r.series.err_H2.front();
    summary.control_final_err = r.series.err_H2.back();
  }
  {
    RunConfig c = variant_config("linear");
    c.da.mode = "linear";
    os << "[reproduce] linear nudging run to t_end = " << c.time.t_end
       << "\n";
    const RunOutputs r = cmd_run(c, spin.checkpoint_path);
    summary.t_linear_threshold =
        first_time_below(r.series.t, r.series.err_H2, kThresholdErrH2);
    summary.linear_regimes =
        cmd_analyze(r.errors_csv_path, resolve_output_dir(c)).report;
  }
  {
    RunConfig c = variant_config("nonlinear");
    c.da.mode = "nonlinear";
    os << "[reproduce] nonlinear nudging run to t_end = " << c.time.t_end
       << "\n";
    const RunOutputs r = cmd_run(c, spin.checkpoint_path);
    summary.t_nonlinear_threshold =
        first_time_below(r.series.t, r.series.err_H2, kThresholdErrH2);
    summary.nonlinear_regimes =
        cmd_analyze(r.errors_csv_path, resolve_output_dir(c)).report;
  }

  CsvTable t;
  t.header = {"variant", "t_to_1e-16", "initial_err_H2", "final_err_H2"};
  t.rows.push_back({"control", "", csv_double(summary.control_initial_err),
                    csv_double(summary.control_final_err)});
  t.rows.push_back({"linear", csv_double(summary.t_linear_threshold), "", ""});
  t.rows.push_back(
      {"nonlinear", csv_double(summary.t_nonlinear_threshold), "", ""});
  write_csv((dir / "summary.csv").string(), t);

  os << "[reproduce] time to err_H2 <= 1e-16: linear "
     << summary.t_linear_threshold << ", nonlinear "
     << summary.t_nonlinear_threshold << "\n";
  return summary;
}

}  // namespace nncda::cli
