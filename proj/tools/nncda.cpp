// Command-line front end: spinup, run, check-params, analyze, reproduce.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical blow-up,
// 4 certification failure under --strict.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "nncda/commands.hpp"

namespace {

nncda::RunConfig build_config(const std::string& config_path,
                              const std::vector<std::string>& sets) {
  nncda::RunConfig config =
      config_path.empty() ? nncda::desk_preset()
                          : nncda::load_config(config_path);
  for (const auto& s : sets) nncda::apply_override(config, s);
  nncda::validate(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral 2D Navier-Stokes with nudging-based data "
               "assimilation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "Configuration file (TOML-style)");
  app.add_option("--set", sets, "Override a config key, e.g. time.dt=5e-4");

  auto* spinup = app.add_subcommand("spinup", "Integrate the reference flow "
                                              "from zero initial data");

  auto* run = app.add_subcommand("run", "Assimilation run against a "
                                        "reference checkpoint");
  std::string reference;
  run->add_option("--reference", reference, "Reference checkpoint")
      ->required();

  auto* check = app.add_subcommand("check-params", "Evaluate the analytical "
                                                   "admissibility conditions");
  bool strict = false;
  check->add_flag("--strict", strict, "Exit 4 when a condition fails");

  auto* analyze = app.add_subcommand("analyze", "Regime segmentation of an "
                                                "error-series CSV");
  std::string series_csv;
  std::string analyze_out = ".";
  double window = nncda::cli::kDefaultRegimeWindow;
  double curvature_tol = nncda::cli::kDefaultCurvatureTol;
  analyze->add_option("series", series_csv, "errors.csv path")->required();
  analyze->add_option("--out", analyze_out, "Output directory");
  analyze->add_option("--window", window, "Smoothing window (time units)");
  analyze->add_option("--curvature-tol", curvature_tol,
                      "Curvature threshold (1/time^2)");

  auto* reproduce = app.add_subcommand("reproduce", "Full pipeline: spinup, "
                                                    "control/linear/nonlinear "
                                                    "runs, analysis");
  std::string scale = "desk";
  reproduce->add_option("--scale", scale, "desk or paper");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spinup) {
      const auto out = nncda::cli::cmd_spinup(build_config(config_path, sets));
      std::cout << "checkpoint: " << out.checkpoint_path << "\n"
                << "energy series: " << out.energy_csv_path << "\n"
                << "final energy: " << out.final_energy << "\n";
      if (out.drift >= 0.0) {
        std::cout << "windowed energy drift: " << out.drift << "\n";
      }
    } else if (*run) {
      const auto out =
          nncda::cli::cmd_run(build_config(config_path, sets), reference);
      std::cout << "error series: " << out.errors_csv_path << "\n"
                << "final err_H2: " << out.final_err_H2 << "\n";
    } else if (*check) {
      return nncda::cli::cmd_check_params(build_config(config_path, sets),
                                          strict, std::cout);
    } else if (*analyze) {
      const auto out =
          nncda::cli::cmd_analyze(series_csv, analyze_out, window,
                                  curvature_tol);
      std::cout << "regimes: " << out.regimes_csv_path << "\n";
      for (const auto& seg : out.report.segments) {
        std::cout << "  [" << seg.t_start << ", " << seg.t_end << "] "
                  << nncda::to_string(seg.kind) << " rate " << seg.rate
                  << " residual " << seg.residual << "\n";
      }
    } else if (*reproduce) {
      nncda::cli::cmd_reproduce(scale, sets, std::cout);
    }
  } catch (const nncda::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nncda::blowup_error& e) {
    std::cerr << "numerical blow-up: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
