#pragma once

#include <stdexcept>
#include <vector>

#include "nncda/field.hpp"
#include "nncda/forcing.hpp"

namespace nncda {

/// Viscosity plus time-independent forcing (stored as curl f) and the
/// Grashof number they induce.
struct PhysicalParams {
  double nu = 0.0;
  SpectralField forcing;
  double grashof = 0.0;
};

/// Validates nu > 0 and computes the Grashof number from the forcing.
PhysicalParams make_params(double nu, SpectralField curl_f);

/// Stream function and current time of one trajectory.
struct SolverState {
  SpectralField psi;
  double t = 0.0;
};

/// Thrown when a trajectory leaves the finite / absorbing-ball regime.
class blowup_error : public std::runtime_error {
 public:
  blowup_error(double t, double h2);
  double t() const { return t_; }
  double h2() const { return h2_; }

 private:
  double t_;
  double h2_;
};

/// Advances one trajectory with the integrating-factor Euler scheme:
/// each vorticity mode moves as
///   w(t+dt) = exp(-nu |kappa|^2 dt) * (w(t) + dt * (N + g + extra)),
/// with the advection tendency N in the Basdevant form, evaluated
/// pseudo-spectrally under the 2/3 dealiasing rule.
///
/// A Stepper owns the transform scratch for one trajectory, so it must
/// stay on a single execution context.
class Stepper {
 public:
  Stepper(GridPtr grid, const PhysicalParams& params);

  /// In-place Euler step; extra is an additional vorticity-level tendency
  /// (the hook for the nudging term), may be null.
  void step(SolverState& state, double dt, const SpectralField* extra);

  /// Tendency of the advection term at the vorticity level, -u . grad w,
  /// dealiased and mean-free.
  SpectralField nonlinear_tendency(const SpectralField& psi);

 private:
  GridPtr grid_;
  const PhysicalParams& params_;
  double guard_ref_;
  bool guard_armed_ = false;
  double cached_dt_ = -1.0;
  std::vector<double> decay_;
  std::vector<double> u1_, pb_;
  std::vector<Complex> ha_, nl_half_;

  void refresh_decay(double dt);
  void compute_tendency_half(const SpectralField& psi);
};

/// One-off step with a scratch Stepper; identical arithmetic to
/// Stepper::step.
SolverState step_if_euler(const SolverState& state,
                          const PhysicalParams& params, double dt,
                          const SpectralField* extra = nullptr);

/// Free convenience wrapper around Stepper::nonlinear_tendency.
SpectralField nonlinear_tendency(const SpectralField& psi);

struct EnergySeries {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> enstrophy;
};

struct SpinupResult {
  SolverState state;
  EnergySeries series;
};

/// Integrates from zero initial data to t_end, sampling the kinetic
/// energy 0.5 ||u||_H^2 and enstrophy 0.5 ||u||_V^2 every sample_every
/// steps (and at the final time).
SpinupResult spinup(GridPtr grid, const PhysicalParams& params, double dt,
                    double t_end, int sample_every);

/// Relative drift between consecutive window means of a series; the
/// statistically-steady criterion used for spin-up is drift below 5%
/// for windows of 50 time units.
double windowed_drift(const std::vector<double>& t,
                      const std::vector<double>& values, double window);

}  // namespace nncda
