#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nncda/diagnostics.hpp"
#include "nncda/run_config.hpp"

namespace nncda::cli {

inline constexpr double kDefaultRegimeWindow = 1.0;
inline constexpr double kDefaultCurvatureTol = 0.5;
inline constexpr double kThresholdErrH2 = 1e-16;

/// io.output_dir resolved against the NNCDA_OUTPUT_ROOT environment
/// variable (absolute paths pass through).
std::string resolve_output_dir(const RunConfig& config);

struct SpinupOutputs {
  std::string checkpoint_path;
  std::string energy_csv_path;
  double final_energy = 0.0;
  double drift = -1.0;  // windowed drift when the series is long enough
};

SpinupOutputs cmd_spinup(const RunConfig& config);

struct RunOutputs {
  std::string errors_csv_path;
  ErrorSeries series;
  double final_err_H2 = 0.0;
};

RunOutputs cmd_run(const RunConfig& config,
                   const std::string& reference_checkpoint);

struct CertRow {
  std::string quantity;
  double value = 0.0;
  std::string requirement;
  int satisfied = -1;  // 1 pass, 0 fail, -1 informational
};

struct CertReport {
  std::vector<CertRow> rows;
  bool all_satisfied() const;
};

CertReport check_params_report(const RunConfig& config);

/// Prints the certification table and writes certification.csv.
/// Returns 4 when strict and a condition fails, 0 otherwise.
int cmd_check_params(const RunConfig& config, bool strict, std::ostream& os);

struct AnalyzeOutputs {
  std::string regimes_csv_path;
  RegimeReport report;
};

AnalyzeOutputs cmd_analyze(const std::string& series_csv,
                           const std::string& output_dir,
                           double window = kDefaultRegimeWindow,
                           double curvature_tol = kDefaultCurvatureTol);

struct ReproduceSummary {
  std::string output_dir;
  double control_initial_err = 0.0;
  double control_final_err = 0.0;
  double t_linear_threshold = 0.0;     // first t with err_H2 <= 1e-16
  double t_nonlinear_threshold = 0.0;  // NaN when never reached
  double spinup_drift = -1.0;
  RegimeReport linear_regimes;
  RegimeReport nonlinear_regimes;
};

/// Full pipeline: spinup, then the control (gains off), linear, and
/// nonlinear assimilation runs, then regime analysis and a summary of
/// time-to-threshold for linear vs nonlinear nudging.
ReproduceSummary cmd_reproduce(const std::string& scale,
                               const std::vector<std::string>& overrides,
                               std::ostream& os);

/// First sample time at which the series drops to `threshold` or below;
/// NaN when it never does.
double first_time_below(const std::vector<double>& t,
                        const std::vector<double>& values, double threshold);

}  // namespace nncda::cli
