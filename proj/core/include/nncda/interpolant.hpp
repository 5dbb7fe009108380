#pragma once

#include <string>
#include <vector>

#include "nncda/csv.hpp"
#include "nncda/field.hpp"

namespace nncda {

enum class InterpolantKind { fourier_projection, volume_average };

/// Observation operator I_h: Fourier-mode projection (cutoff m in integer
/// index units, h = L/m) or local volume averaging over square cells of
/// side h.  alpha is the operator-norm bound, c0 the approximation
/// constant of the bound ||phi - I_h phi||^2 <= c0 h^2 ||grad phi||^2.
struct InterpolantSpec {
  InterpolantKind kind = InterpolantKind::fourier_projection;
  int m = 0;
  double h = 0.0;
  double alpha = 1.0;
  double c0 = 0.0;
};

/// Fourier projection: alpha = 1; c0 = 1/(2 pi)^2 holds under h = L/m.
InterpolantSpec fourier_interpolant(int m);

/// Volume averaging: alpha = 1 (orthogonal projection); c0 defaults to
/// the continuum Poincare constant 1/pi^2 until measured.
InterpolantSpec volume_interpolant(double h);

/// Observation length scale: h for volume averaging, L/m for Fourier.
double interpolant_h(const InterpolantSpec& spec, const Grid& grid);

SpectralField apply(const InterpolantSpec& spec, const SpectralField& f);
VelocityField apply(const InterpolantSpec& spec, const VelocityField& u);

struct AxiomResult {
  std::string axiom;
  int trials = 0;
  double worst_ratio = 0.0;
  bool pass = false;
};

/// Empirical axiom check on random mean-free fields.  Never a proof,
/// only "no counterexample in N trials".  measured_c0 is the largest
/// observed ||phi - I_h phi||^2 / (h^2 ||grad phi||^2).
struct AxiomReport {
  std::vector<AxiomResult> rows;
  double measured_c0 = 0.0;

  const AxiomResult& row(const std::string& axiom) const;
  bool all_pass() const;
};

AxiomReport check_axioms(const InterpolantSpec& spec, GridPtr grid,
                         int trials, double tolerance);

CsvTable axiom_report_csv(const AxiomReport& report);

/// Ratio ||I_h phi|| / ((sqrt(c0) h + lambda1^{-1/2}) ||phi||_V) of the
/// derived interpolant bound; must be <= 1 for admissible (c0, h).
/// Rejects the zero field.
double interp_operator_bound(const InterpolantSpec& spec,
                             const SpectralField& f);

}  // namespace nncda
