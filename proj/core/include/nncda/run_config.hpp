#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nncda/nudging.hpp"
#include "nncda/theory.hpp"

namespace nncda {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every experimental knob, serialized as a nested key-value file
/// (TOML-style sections, `key = value` lines, `#` comments).  All
/// quantities are nondimensional.
struct RunConfig {
  struct GridSection {
    int n = 256;
    double L = 6.283185307179586;
  } grid;

  struct ForcingSection {
    std::uint64_t seed = 0;
    int k_min = 4;
    int k_max = 16;
  };
  struct PhysicsSection {
    double nu = 0.008;
    double target_G = 2500.0;
    ForcingSection forcing;
  } physics;

  struct InterpolantSection {
    std::string kind = "fourier";  // fourier | volume
    int m = 8;
    double h = 0.0;
  };
  struct DaSection {
    std::string mode = "nonlinear";  // linear | nonlinear | capped
    double mu = 2.0;
    double beta = 2.0;
    double gamma = 0.1;
    int observe_every = 1;
    InterpolantSection interpolant;
  } da;

  struct TimeSection {
    double dt = 1e-3;
    double t_spinup = 100.0;
    double t_end = 40.0;
    int sample_every = 20;
  } time;

  struct TheorySection {
    double c = 1.0;
    double eps = 1e-10;
    double T_window = 150.0;
    double c0 = 0.0;  // 0 selects the interpolant default
  } theory;

  struct IoSection {
    std::string output_dir = "out";
    long checkpoint_every = 0;  // 0 disables periodic checkpoints
  } io;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string to_toml(const RunConfig& config);

/// Applies one `section.key=value` override.
void apply_override(RunConfig& config, const std::string& assignment);

void validate(const RunConfig& config);

/// Advective CFL estimate u_H dt / (L/n) from the absorbing-ball
/// velocity scale; a value above 0.5 earns a warning.
double cfl_estimate(const RunConfig& config);

// Builders for the domain objects a run needs.
GridPtr config_grid(const RunConfig& config);
PhysicalParams config_params(const RunConfig& config, const GridPtr& grid);
NudgingConfig config_nudging(const RunConfig& config, const GridPtr& grid);
theory::TheoryConstants config_theory(const RunConfig& config,
                                      const GridPtr& grid);

/// Scaled-down rendition of the full experiment: resolved forcing band
/// 4..16 at n = 256, G = 2500, observing modes up to m = 8.
RunConfig desk_preset();

/// The full-scale experiment constants: n = 1024, G = 250000, forcing
/// band 16..64, m = 32, gamma = 0.1, mu = beta = 2, dt = 3.1250e-4.
RunConfig paper_preset();

}  // namespace nncda
