#include "nncda/nudging.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "nncda/ops.hpp"

namespace nncda {

namespace {
constexpr double kNormFloor = 1e-300;

double weight_scale(double norm, double gamma) {
  return norm < kNormFloor ? 0.0 : std::pow(norm, -gamma);
}
}  // namespace

void validate(const NudgingConfig& cfg) {
  if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) {
    throw std::invalid_argument("nudging: gamma must be in [0, 1)");
  }
  if (cfg.mu < 0.0 || cfg.beta < 0.0) {
    throw std::invalid_argument("nudging: gains must be nonnegative");
  }
  if (cfg.observe_every < 1) {
    throw std::invalid_argument("nudging: observe_every must be >= 1");
  }
}

SpectralField nonlinear_weight(const SpectralField& phi, double gamma) {
  SpectralField out = phi;
  out *= weight_scale(h_norm(phi), gamma);
  return out;
}

VelocityField nonlinear_weight(const VelocityField& phi, double gamma) {
  VelocityField out = phi;
  out *= weight_scale(h_norm(phi), gamma);
  return out;
}

SpectralField capped_weight(const SpectralField& phi, double gamma) {
  const double norm = h_norm(phi);
  if (norm >= 1.0) return phi;
  SpectralField out = phi;
  out *= weight_scale(norm, gamma);
  return out;
}

VelocityField capped_weight(const VelocityField& phi, double gamma) {
  const double norm = h_norm(phi);
  if (norm >= 1.0) return phi;
  VelocityField out = phi;
  out *= weight_scale(norm, gamma);
  return out;
}

double control_gain(const NudgingConfig& cfg, double d_norm) {
  switch (cfg.mode) {
    case NudgeMode::linear:
      return cfg.mu + cfg.beta;
    case NudgeMode::nonlinear:
      return cfg.mu * weight_scale(d_norm, cfg.gamma) + cfg.beta;
    case NudgeMode::capped: {
      const double s =
          d_norm >= 1.0 ? 1.0 : weight_scale(d_norm, cfg.gamma);
      return cfg.mu * s + cfg.beta;
    }
  }
  throw std::logic_error("unreachable nudge mode");
}

VelocityField nudge_tendency(const VelocityField& u_obs_interp,
                             const VelocityField& v,
                             const NudgingConfig& cfg) {
  require_same_grid(u_obs_interp.x, v.x);
  VelocityField d = u_obs_interp - apply(cfg.interpolant, v);
  d *= control_gain(cfg, h_norm(d));
  d.x.zero_mean_mode();
  d.y.zero_mean_mode();
  return d;
}

namespace {

int observed_cutoff(const NudgingConfig& cfg, const Grid& g) {
  if (cfg.interpolant.kind == InterpolantKind::fourier_projection) {
    return cfg.interpolant.m;
  }
  return static_cast<int>(std::lround(g.length() / cfg.interpolant.h));
}

}  // namespace

DaResult run_da(const SolverState& u0, const SolverState& v0,
                const PhysicalParams& params, const NudgingConfig& cfg,
                double dt, double t_end, int sample_every,
                long checkpoint_every, const DaSnapshotHook& hook) {
  require_same_grid(u0.psi, v0.psi);
  validate(cfg);
  if (sample_every < 1) {
    throw std::invalid_argument("run_da: sample_every must be >= 1");
  }
  const GridPtr grid = u0.psi.grid();
  const Grid& g = *grid;
  const int n = g.n();
  const int m_cut = observed_cutoff(cfg, g);
  const long m2 = static_cast<long>(m_cut) * m_cut;
  const bool fourier =
      cfg.interpolant.kind == InterpolantKind::fourier_projection;

  Stepper su(grid, params);
  Stepper sv(grid, params);
  DaResult r;
  SolverState u = u0;
  SolverState v = v0;

  // Observed-mode bookkeeping for the Fourier fast path: the control
  // term lives entirely on modes with index magnitude <= m, so the
  // per-step work there is a sweep over those modes only.
  std::vector<std::size_t> low;
  std::vector<double> low_k2;
  if (fourier) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const long mag2 = g.index_mag2(i, j);
        if (mag2 > 0 && mag2 <= m2 && g.dealias_keep(i, j)) {
          low.push_back(static_cast<std::size_t>(i) * n + j);
          low_k2.push_back(g.k2(i, j));
        }
      }
    }
  }

  SpectralField obs_psi(grid);
  VelocityField obs_vel;
  SpectralField extra(grid);

  auto sample = [&] {
    double pm2 = 0.0, qm2 = 0.0, v2 = 0.0, evx = 0.0, ens = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double k2 = g.k2(i, j);
        const double dmag = std::norm(v.psi.at(i, j) - u.psi.at(i, j));
        const double eH = k2 * dmag;
        if (g.index_mag2(i, j) <= m2) {
          pm2 += eH;
        } else {
          qm2 += eH;
        }
        v2 += k2 * k2 * dmag;
        const double vmag = std::norm(v.psi.at(i, j));
        evx += k2 * vmag;
        ens += k2 * k2 * vmag;
      }
    }
    r.series.t.push_back(v.t);
    r.series.err_H2.push_back(pm2 + qm2);
    r.series.err_V2.push_back(v2);
    r.series.err_Pm2.push_back(pm2);
    r.series.err_Qm2.push_back(qm2);
    r.series.energy_v.push_back(0.5 * evx);
    r.series.enstrophy_v.push_back(0.5 * ens);
  };

  sample();
  const long steps = std::lround(t_end / dt);
  long since_obs = 0;
  for (long s = 1; s <= steps; ++s) {
    if ((s - 1) % cfg.observe_every == 0) {
      if (fourier) {
        obs_psi = u.psi;
      } else {
        obs_vel = apply(cfg.interpolant, grad_perp(u.psi));
      }
      since_obs = 0;
    }
    assert(since_obs < cfg.observe_every);

    if (fourier) {
      double d2 = 0.0;
      for (std::size_t a = 0; a < low.size(); ++a) {
        d2 += low_k2[a] *
              std::norm(obs_psi.coeffs()[low[a]] - v.psi.coeffs()[low[a]]);
      }
      const double gain = control_gain(cfg, std::sqrt(d2));
      for (std::size_t a = 0; a < low.size(); ++a) {
        extra.coeffs()[low[a]] =
            gain * (-low_k2[a]) *
            (obs_psi.coeffs()[low[a]] - v.psi.coeffs()[low[a]]);
      }
    } else {
      extra = curl(nudge_tendency(obs_vel, grad_perp(v.psi), cfg));
    }

    su.step(u, dt, nullptr);
    sv.step(v, dt, &extra);
    ++since_obs;

    if (s % sample_every == 0 || s == steps) sample();
    if (checkpoint_every > 0 && hook &&
        (s % checkpoint_every == 0 || s == steps)) {
      hook(u, v, s);
    }
  }
  r.u_final = std::move(u);
  r.v_final = std::move(v);
  return r;
}

CsvTable error_series_csv(const ErrorSeries& s) {
  CsvTable t;
  t.header = {"t",        "err_H2",   "err_V2",      "err_Pm2",
              "err_Qm2",  "energy_v", "enstrophy_v"};
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.rows.push_back({csv_double(s.t[i]), csv_double(s.err_H2[i]),
                      csv_double(s.err_V2[i]), csv_double(s.err_Pm2[i]),
                      csv_double(s.err_Qm2[i]), csv_double(s.energy_v[i]),
                      csv_double(s.enstrophy_v[i])});
  }
  return t;
}

ErrorSeries error_series_from_csv(const CsvTable& t) {
  ErrorSeries s;
  s.t = t.numeric_column("t");
  s.err_H2 = t.numeric_column("err_H2");
  s.err_V2 = t.numeric_column("err_V2");
  s.err_Pm2 = t.numeric_column("err_Pm2");
  s.err_Qm2 = t.numeric_column("err_Qm2");
  s.energy_v = t.numeric_column("energy_v");
  s.enstrophy_v = t.numeric_column("enstrophy_v");
  return s;
}

}  // namespace nncda
