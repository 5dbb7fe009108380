#include "nncda/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nncda {

std::pair<double, double> scale_split(const VelocityField& w, int m) {
  const Grid& g = *w.grid();
  const int n = g.n();
  const long m2 = static_cast<long>(m) * m;
  double pm2 = 0.0, qm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double e = std::norm(w.x.at(i, j)) + std::norm(w.y.at(i, j));
      if (g.index_mag2(i, j) <= m2) {
        pm2 += e;
      } else {
        qm2 += e;
      }
    }
  }
  return {pm2, qm2};
}

double ExponentialFit::value(double t) const {
  return std::exp(log_intercept + rate * t);
}

ExponentialFit fit_exponential(const std::vector<double>& t,
                               const std::vector<double>& err, double t_lo,
                               double t_hi) {
  if (t.size() != err.size()) {
    throw std::invalid_argument("fit_exponential: size mismatch");
  }
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(err[i] > 0.0)) {
      throw std::invalid_argument(
          "fit_exponential: nonpositive error inside the fit window");
    }
    ts.push_back(t[i]);
    ys.push_back(std::log(err[i]));
  }
  if (ts.size() < 3) {
    throw std::invalid_argument("fit_exponential: window has < 3 samples");
  }
  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
  }
  const double mt = st / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxx += (ts[i] - mt) * (ts[i] - mt);
    sxy += (ts[i] - mt) * (ys[i] - my);
  }
  ExponentialFit fit;
  fit.rate = (sxx > 0.0) ? sxy / sxx : 0.0;
  fit.log_intercept = my - fit.rate * mt;
  fit.samples = static_cast<int>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double model_log = fit.log_intercept + fit.rate * ts[i];
    fit.max_log_residual =
        std::max(fit.max_log_residual, std::abs(ys[i] - model_log));
    fit.max_abs_residual = std::max(
        fit.max_abs_residual, std::abs(std::exp(ys[i]) - std::exp(model_log)));
  }
  return fit;
}

std::string to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::exponential:
      return "exponential";
    case RegimeKind::super_exponential:
      return "super_exponential";
    case RegimeKind::floor:
      return "floor";
  }
  return "?";
}

bool RegimeReport::has_kind(RegimeKind kind) const {
  return std::any_of(segments.begin(), segments.end(),
                     [&](const RegimeSegment& s) { return s.kind == kind; });
}

bool RegimeReport::super_exponential_bracketed() const {
  for (std::size_t i = 1; i + 1 < segments.size(); ++i) {
    if (segments[i].kind == RegimeKind::super_exponential &&
        segments[i - 1].kind != RegimeKind::super_exponential &&
        segments[i + 1].kind != RegimeKind::super_exponential) {
      return true;
    }
  }
  return false;
}

RegimeReport detect_regimes(const std::vector<double>& t,
                            const std::vector<double>& err, double window,
                            double curvature_tol, double floor_threshold) {
  const std::size_t n = t.size();
  if (n != err.size() || n < 9) {
    throw std::invalid_argument("detect_regimes: series too short");
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("detect_regimes: bad times");

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::log(std::max(err[i], std::numeric_limits<double>::min()));
  }

  // Moving-average smoothing over the window length.
  const long half =
      std::max<long>(1, std::lround(window / (2.0 * dt)));
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long lo = std::max<long>(0, static_cast<long>(i) - half);
    const long hi = std::min<long>(n - 1, static_cast<long>(i) + half);
    double s = 0.0;
    for (long k = lo; k <= hi; ++k) s += y[k];
    ys[i] = s / static_cast<double>(hi - lo + 1);
  }

  // Centered second difference of the smoothed log error.
  const double span = static_cast<double>(half) * dt;
  std::vector<RegimeKind> label(n, RegimeKind::exponential);
  for (std::size_t i = 0; i < n; ++i) {
    if (err[i] < floor_threshold) {
      label[i] = RegimeKind::floor;
      continue;
    }
    const long il = std::max<long>(0, static_cast<long>(i) - half);
    const long ir = std::min<long>(n - 1, static_cast<long>(i) + half);
    if (ir - il < 2 * half) continue;  // ends keep the default label
    const double curv = (ys[ir] - 2.0 * ys[i] + ys[il]) / (span * span);
    if (curv < -curvature_tol) label[i] = RegimeKind::super_exponential;
  }

  // Merge labels into contiguous segments, absorbing runs shorter than
  // the window into the previous segment.
  struct Run {
    std::size_t begin, end;  // [begin, end]
    RegimeKind kind;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < n; ++i) {
    if (!runs.empty() && runs.back().kind == label[i]) {
      runs.back().end = i;
    } else {
      runs.push_back({i, i, label[i]});
    }
  }
  std::vector<Run> merged;
  for (const Run& run : runs) {
    const double len = t[run.end] - t[run.begin];
    const bool tiny = len < window;
    if (tiny && !merged.empty()) {
      merged.back().end = run.end;
    } else if (!merged.empty() && merged.back().kind == run.kind) {
      merged.back().end = run.end;
    } else {
      merged.push_back(run);
    }
  }
  // A leading tiny run joins its successor.
  while (merged.size() > 1 &&
         t[merged.front().end] - t[merged.front().begin] < window) {
    merged[1].begin = merged.front().begin;
    merged.erase(merged.begin());
  }

  RegimeReport report;
  for (const Run& run : merged) {
    RegimeSegment seg;
    seg.t_start = t[run.begin];
    seg.t_end = t[run.end];
    seg.kind = run.kind;
    if (run.end - run.begin >= 2) {
      bool positive = true;
      for (std::size_t i = run.begin; i <= run.end; ++i) {
        if (!(err[i] > 0.0)) {
          positive = false;
          break;
        }
      }
      if (positive) {
        const ExponentialFit fit =
            fit_exponential(t, err, seg.t_start, seg.t_end);
        seg.rate = fit.rate;
        seg.residual = fit.max_log_residual;
      }
    }
    report.segments.push_back(seg);
  }
  return report;
}

RegimeReport detect_regimes(const ErrorSeries& series, double window,
                            double curvature_tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double initial_energy =
      series.energy_v.empty() ? 1.0 : std::max(series.energy_v.front(), 1.0);
  const double floor_threshold = 100.0 * eps * eps * initial_energy;
  return detect_regimes(series.t, series.err_H2, window, curvature_tol,
                        floor_threshold);
}

CsvTable regime_report_csv(const RegimeReport& report) {
  CsvTable t;
  t.header = {"t_start", "t_end", "kind", "rate", "residual"};
  for (const auto& s : report.segments) {
    t.rows.push_back({csv_double(s.t_start), csv_double(s.t_end),
                      to_string(s.kind), csv_double(s.rate),
                      csv_double(s.residual)});
  }
  return t;
}

RegimeReport regime_report_from_csv(const CsvTable& table) {
  RegimeReport report;
  const int c_kind = table.column("kind");
  const auto t_start = table.numeric_column("t_start");
  const auto t_end = table.numeric_column("t_end");
  const auto rate = table.numeric_column("rate");
  const auto residual = table.numeric_column("residual");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    RegimeSegment s;
    s.t_start = t_start[i];
    s.t_end = t_end[i];
    s.rate = rate[i];
    s.residual = residual[i];
    const std::string& k = table.rows[i][c_kind];
    if (k == "super_exponential") {
      s.kind = RegimeKind::super_exponential;
    } else if (k == "floor") {
      s.kind = RegimeKind::floor;
    } else {
      s.kind = RegimeKind::exponential;
    }
    report.segments.push_back(s);
  }
  return report;
}

std::vector<double> shell_spectrum(const SpectralField& f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  std::vector<double> shells;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double e = std::norm(f.at(i, j));
      if (e == 0.0) continue;
      const auto s = static_cast<std::size_t>(
          std::floor(std::sqrt(static_cast<double>(g.index_mag2(i, j)))));
      if (shells.size() <= s) shells.resize(s + 1, 0.0);
      shells[s] += e;
    }
  }
  return shells;
}

CsvTable shell_spectrum_csv(const std::vector<double>& spectrum) {
  CsvTable t;
  t.header = {"shell", "energy"};
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    t.rows.push_back({std::to_string(s), csv_double(spectrum[s])});
  }
  return t;
}

EnvelopeReport envelope_compare(const std::vector<double>& t,
                                const std::vector<double>& err,
                                const std::function<double(double)>& bound,
                                bool thresholds_certified) {
  if (t.size() != err.size()) {
    throw std::invalid_argument("envelope_compare: size mismatch");
  }
  EnvelopeReport r;
  r.observational = !thresholds_certified;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (err[i] > bound(t[i])) {
      if (!r.any_violation) {
        r.any_violation = true;
        r.first_violation_time = t[i];
      }
      ++r.violations;
    }
  }
  return r;
}

}  // namespace nncda
