#pragma once

#include <functional>

#include "nncda/csv.hpp"
#include "nncda/interpolant.hpp"
#include "nncda/solver.hpp"

namespace nncda {

enum class NudgeMode { linear, nonlinear, capped };

/// Feedback-control configuration.  mu is the nonlinear gain with units
/// (length)^{2 gamma} / (time)^{1 + gamma}, beta the linear gain with
/// units 1/(time), gamma in [0,1).  gamma = 0 recovers linear nudging.
struct NudgingConfig {
  NudgeMode mode = NudgeMode::nonlinear;
  double mu = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  InterpolantSpec interpolant;
  int observe_every = 1;
};

void validate(const NudgingConfig& cfg);

/// N(phi) = phi ||phi||_H^{-gamma}, with N(0) = 0.  Norms below 1e-300
/// take the zero branch so the scale factor cannot overflow.
SpectralField nonlinear_weight(const SpectralField& phi, double gamma);
VelocityField nonlinear_weight(const VelocityField& phi, double gamma);

/// Piecewise variant that leaves phi unchanged once ||phi||_H >= 1 and
/// applies the nonlinear weight below; continuous at the seam.
SpectralField capped_weight(const SpectralField& phi, double gamma);
VelocityField capped_weight(const VelocityField& phi, double gamma);

/// Scalar gain applied to the observed error d so that the control term
/// is gain * d:
///   linear     mu + beta        (the gamma = 0 reduction, single gain)
///   nonlinear  mu ||d||^{-gamma} + beta
///   capped     mu min(||d||^{-gamma}, branch) + beta
/// Computing one scalar keeps the gamma = 0 nonlinear mode bit-identical
/// to the linear mode.
double control_gain(const NudgingConfig& cfg, double d_norm);

/// Control term mu W(d) + beta d with d = u_obs_interp - I_h(v).
/// u_obs_interp must already be interpolated observations; the
/// assimilated run never sees the full reference state.
VelocityField nudge_tendency(const VelocityField& u_obs_interp,
                             const VelocityField& v,
                             const NudgingConfig& cfg);

/// Time-stamped squared errors of the assimilated run: w = v - u at the
/// velocity level, split into observed (P_m) and unobserved (Q_m) parts,
/// plus the assimilated energy and enstrophy.
struct ErrorSeries {
  std::vector<double> t;
  std::vector<double> err_H2;
  std::vector<double> err_V2;
  std::vector<double> err_Pm2;
  std::vector<double> err_Qm2;
  std::vector<double> energy_v;
  std::vector<double> enstrophy_v;

  std::size_t size() const { return t.size(); }
};

CsvTable error_series_csv(const ErrorSeries& s);
ErrorSeries error_series_from_csv(const CsvTable& t);

struct DaResult {
  ErrorSeries series;
  SolverState u_final;
  SolverState v_final;
};

using DaSnapshotHook =
    std::function<void(const SolverState& u, const SolverState& v, long step)>;

/// Co-evolves the reference u and the assimilated v.  Observations
/// I_h(u) are snapshotted every observe_every steps and held constant in
/// between; every step injects the control term through the solver's
/// extra-tendency hook.  Errors are recorded every sample_every steps.
DaResult run_da(const SolverState& u0, const SolverState& v0,
                const PhysicalParams& params, const NudgingConfig& cfg,
                double dt, double t_end, int sample_every,
                long checkpoint_every = 0, const DaSnapshotHook& hook = {});

}  // namespace nncda
