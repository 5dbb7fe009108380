#pragma once

#include <string>
#include <vector>

namespace nncda::theory {

/// Inputs for the analytical certifiers.  c is the (non-numeric in the
/// source analysis) Ladyzhenskaya/Sobolev constant and must be supplied;
/// every certified output is conditional on it.  T is the averaging
/// window with 1/(nu lambda1) < T required where it enters.  eps is the
/// target error floor of the super-exponential window.
struct TheoryConstants {
  double c = 1.0;
  double c0 = 0.0;
  double alpha = 1.0;
  double lambda1 = 0.0;
  double nu = 0.0;
  double G = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double beta = 0.0;
  double T = 0.0;
  double eps = 1e-10;
  double L = 1.0;
};

void validate(const TheoryConstants& tc);

/// Large-time bounds on the reference flow.
struct AbsorbingBall {
  double h2;            // ||u||_H^2   <= 2 G^2 nu^2
  double v2_window;     // int_t^{t+T} ||u||_V^2  <= 2 (1 + T lambda1 nu) G^2 nu
  double v2;            // ||u||_V^2   <= 2 lambda1 G^2 nu^2
  double au2_window;    // int_t^{t+T} ||Au||^2   <= 2 (1 + T lambda1 nu) lambda1 G^2 nu
  double au2;           // ||Au||^2    <= lambda1^2 nu^2 c (1+G)^4  (steady forcing)
};

AbsorbingBall absorbing_ball(double G, double nu, double lambda1, double T,
                             double c);

/// The H-convergence constant
///   a = (2-gamma)^{1-gamma/2} gamma^{gamma/2} lambda1^{(1-gamma)/2}
///       2^{gamma/2-2},
/// with a <= lambda1^{(1-gamma)/2} / 2.
double constant_a(double gamma, double lambda1);

/// Same constant written through the set-difference bracket
///   ( q^{(2-gamma)/gamma} - q^{2/gamma} )^{gamma/2} lambda1^{(1-gamma)/2}
///   2^{gamma/2-1},  q = (2-gamma)/2.
double constant_a_bracket(double gamma, double lambda1);

/// V-theorem variant; differs from constant_a_bracket only in the
/// lambda1 exponent, (1-2 gamma)/2.
double constant_a_v(double gamma, double lambda1);

/// delta = min{ a/2, a^{(2-gamma)/2} (eps / b)^{gamma/2} } with
/// b = q^{(2-gamma)/gamma} - q^{2/gamma}, guaranteeing
/// min_{x>=0} (a x^2 - delta x^{2-gamma}) >= -eps.
double small_h_delta(double a, double gamma, double eps);

/// Location of the nonzero critical point of f(x) = a x^2 - delta x^{2-gamma}.
double small_h_x0(double a, double gamma, double delta);

struct SmallHOracle {
  double worst_f;
  double arg_worst;
};

/// Brute-force minimum of f over a dense grid on [0, x_max] plus the
/// analytic critical point.  Requires samples >= 1e5 and x_max >= 2 x0.
SmallHOracle small_h_oracle(double a, double gamma, double delta,
                            long samples, double x_max);

struct ThresholdsH {
  double mu_min;
  double beta_min;
  double h_max;
  double r_ceiling;  // R_H, the super-exponential window ceiling on ||w||_H^2
};

/// Sufficient conditions of the H-norm convergence theorem:
///   mu  > max{5 c^2 lambda1 G^2 nu, alpha^gamma c^2 lambda1 G^2 nu,
///             alpha^gamma / gamma}
///   beta > c^2 lambda1 G^2 nu
/// and h below all of  sqrt(nu/(2 mu c0)),  sqrt(nu/(beta c0)),
///   a alpha^gamma (eps/2)^{gamma/2} nu^{1-gamma/2} / (mu sqrt(c0)).
ThresholdsH thresholds_H(const TheoryConstants& tc);

struct ThresholdsV {
  double mu_min;
  double beta_min;
  double h_max;
  double J;
  double r_ceiling;  // R_V
};

/// Sufficient conditions of the V-norm convergence theorem, with
/// J = 2c log(2 c^{3/2}) + 4c log(1+G).
ThresholdsV thresholds_V(const TheoryConstants& tc);

/// Double-exponential envelope A exp(-b exp(rate (t - t0))) with
/// rate = mu alpha^{-gamma} gamma, A = exp(-1/rate) and
/// b = -(rate - 1) log(w0_H2) / rate.  Throws when b <= 0, i.e. the
/// initial error is outside the super-exponential window.
double envelope_H(double t, double t0, double mu, double alpha, double gamma,
                  double w0_H2);

/// V-norm envelope with rate = mu gamma lambda1^{gamma/2}.
double envelope_V(double t, double t0, double mu, double gamma, double lambda1,
                  double w0_V2);

/// Estimate of M bounding ||f + beta P I_h(w)||_H^2 by the triangle
/// inequality: 2 ||f||^2 + 2 beta^2 alpha^2 (2 G^2 nu^2 + ||v||_H^2).
double estimate_M(double f_H2, double beta, double alpha, double G, double nu,
                  double v_H2);

/// Transient bound RHS_H = e^{-nu lambda1 t_a} ||v0||_H^2
///                         + M (1 - e^{-nu lambda1 t_a}) / (beta nu lambda1).
double rhs_H(const TheoryConstants& tc, double v0_H2, double M, double t_a);

/// Transient bound RHS_V (the Gronwall product form).  Overflows double
/// for realistic constants; prefer rhs_V_log.
double rhs_V(const TheoryConstants& tc, double v0_H2, double v0_V2, double M);
double rhs_V_log(const TheoryConstants& tc, double v0_H2, double v0_V2,
                 double M);

/// Window ceilings used by the switch-time computation (the linear-only
/// stage runs with gain beta).
double switch_ceiling(double beta, double gamma, double lambda1);

/// Earliest certified time after t_a at which the nonlinear term may be
/// switched on, H version:
///   t0 = t_a - log{R_H^2 e^{-1-beta T} / (2 (2 nu^2 G^2 + RHS_H))} / D,
///   D  = beta/2 - (c^2/(T nu)) 2 (1 + lambda1 nu T) nu G^2.
/// Throws when D <= 0 ("beta too small to certify").
double switch_time_H(const TheoryConstants& tc, double t_a, double rhs_h,
                     double r_H);

/// V version: t0 = t_a - (6/(5 G J)) log{R_V^2 e^{-(1+beta T)}
///                  / (2 (2 lambda1 nu^2 G^2 + RHS_V))}, with RHS_V
/// supplied as its logarithm.
double switch_time_V(const TheoryConstants& tc, double t_a, double log_rhs_v,
                     double r_V);

/// Existence-theorem time horizon T_*; used here for dimensional checks.
double existence_time_star(const TheoryConstants& tc, double h, double R,
                           double f_H2, double u_V2_time_integral);

}  // namespace nncda::theory
