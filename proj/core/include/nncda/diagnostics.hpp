#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nncda/csv.hpp"
#include "nncda/field.hpp"
#include "nncda/nudging.hpp"

namespace nncda {

/// Observed/unobserved split (||P_m w||_H^2, ||Q_m w||_H^2) of a velocity
/// field at integer index magnitude m; the parts sum to ||w||_H^2.
std::pair<double, double> scale_split(const VelocityField& w, int m);

struct ExponentialFit {
  double rate = 0.0;           // d(log err)/dt
  double log_intercept = 0.0;  // log err extrapolated to t = 0
  double max_abs_residual = 0.0;  // max |err - fit| in linear scale
  double max_log_residual = 0.0;  // max |log err - log fit|
  int samples = 0;

  double value(double t) const;
};

/// Least squares of log(err) against t over [t_lo, t_hi].  Needs at
/// least 3 samples in the window; nonpositive errors there are rejected.
ExponentialFit fit_exponential(const std::vector<double>& t,
                               const std::vector<double>& err, double t_lo,
                               double t_hi);

enum class RegimeKind { exponential, super_exponential, floor };

std::string to_string(RegimeKind kind);

struct RegimeSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  RegimeKind kind = RegimeKind::exponential;
  double rate = 0.0;
  double residual = 0.0;
};

struct RegimeReport {
  std::vector<RegimeSegment> segments;

  bool has_kind(RegimeKind kind) const;
  /// True when some super-exponential segment sits strictly between two
  /// non-super-exponential segments.
  bool super_exponential_bracketed() const;
};

/// Segments a positive error series by the curvature of log(err):
/// concave down beyond curvature_tol (units 1/time^2) on smoothed
/// sliding windows marks super-exponential decay, near-zero slope below
/// floor_threshold marks the floor, anything else is exponential.
/// Segments shorter than the window are absorbed into their neighbors.
RegimeReport detect_regimes(const std::vector<double>& t,
                            const std::vector<double>& err, double window,
                            double curvature_tol, double floor_threshold);

/// ErrorSeries convenience: works on err_H2 with the floor threshold
/// 100 eps_mach^2 times the initial energy.
RegimeReport detect_regimes(const ErrorSeries& series, double window,
                            double curvature_tol);

CsvTable regime_report_csv(const RegimeReport& report);
RegimeReport regime_report_from_csv(const CsvTable& table);

/// Energy per integer shell s <= |k| < s+1 (index magnitude); the sum
/// over shells equals h_norm^2.
std::vector<double> shell_spectrum(const SpectralField& f);
CsvTable shell_spectrum_csv(const std::vector<double>& spectrum);

struct EnvelopeReport {
  long violations = 0;
  double first_violation_time = 0.0;
  bool any_violation = false;
  bool observational = false;  // set when the thresholds were not certified
};

/// Per-sample check err(t) <= bound(t).
EnvelopeReport envelope_compare(const std::vector<double>& t,
                                const std::vector<double>& err,
                                const std::function<double(double)>& bound,
                                bool thresholds_certified);

}  // namespace nncda
