#include "nncda/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nncda::theory {

void validate(const TheoryConstants& tc) {
  if (!(tc.c > 0.0 && tc.c0 > 0.0 && tc.alpha > 0.0 && tc.lambda1 > 0.0 &&
        tc.nu > 0.0 && tc.G >= 0.0 && tc.mu > 0.0 && tc.beta > 0.0 &&
        tc.T > 0.0 && tc.eps > 0.0 && tc.L > 0.0)) {
    throw std::invalid_argument("theory: constants must be positive");
  }
  if (!(tc.gamma > 0.0 && tc.gamma < 1.0)) {
    throw std::invalid_argument("theory: gamma must be in (0, 1)");
  }
}

AbsorbingBall absorbing_ball(double G, double nu, double lambda1, double T,
                             double c) {
  AbsorbingBall b;
  const double g2 = G * G;
  b.h2 = 2.0 * g2 * nu * nu;
  b.v2_window = 2.0 * (1.0 + T * lambda1 * nu) * g2 * nu;
  b.v2 = 2.0 * lambda1 * g2 * nu * nu;
  b.au2_window = 2.0 * (1.0 + T * lambda1 * nu) * lambda1 * g2 * nu;
  b.au2 = lambda1 * lambda1 * nu * nu * c * std::pow(1.0 + G, 4);
  return b;
}

namespace {
void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in (0, 1)");
  }
}

double bracket_term(double gamma) {
  const double q = (2.0 - gamma) / 2.0;
  return std::pow(q, (2.0 - gamma) / gamma) - std::pow(q, 2.0 / gamma);
}
}  // namespace

double constant_a(double gamma, double lambda1) {
  require_gamma(gamma);
  return std::pow(2.0 - gamma, 1.0 - gamma / 2.0) *
         std::pow(gamma, gamma / 2.0) *
         std::pow(lambda1, (1.0 - gamma) / 2.0) *
         std::pow(2.0, gamma / 2.0 - 2.0);
}

double constant_a_bracket(double gamma, double lambda1) {
  require_gamma(gamma);
  return std::pow(bracket_term(gamma), gamma / 2.0) *
         std::pow(lambda1, (1.0 - gamma) / 2.0) *
         std::pow(2.0, gamma / 2.0 - 1.0);
}

double constant_a_v(double gamma, double lambda1) {
  require_gamma(gamma);
  return std::pow(bracket_term(gamma), gamma / 2.0) *
         std::pow(lambda1, (1.0 - 2.0 * gamma) / 2.0) *
         std::pow(2.0, gamma / 2.0 - 1.0);
}

double small_h_delta(double a, double gamma, double eps) {
  require_gamma(gamma);
  if (!(a > 0.0 && eps > 0.0)) {
    throw std::invalid_argument("small_h_delta: a and eps must be positive");
  }
  const double second = std::pow(a, (2.0 - gamma) / 2.0) *
                        std::pow(eps / bracket_term(gamma), gamma / 2.0);
  return std::min(a / 2.0, second);
}

double small_h_x0(double a, double gamma, double delta) {
  require_gamma(gamma);
  if (delta <= 0.0) return 0.0;
  return std::pow((2.0 - gamma) * delta / (2.0 * a), 1.0 / gamma);
}

SmallHOracle small_h_oracle(double a, double gamma, double delta, long samples,
                            double x_max) {
  require_gamma(gamma);
  if (samples < 100000) {
    throw std::invalid_argument("small_h_oracle: samples must be >= 1e5");
  }
  const double x0 = small_h_x0(a, gamma, delta);
  if (x_max < 2.0 * x0) {
    throw std::invalid_argument("small_h_oracle: x_max must be >= 2 x0");
  }
  auto f = [&](double x) {
    return a * x * x - delta * std::pow(x, 2.0 - gamma);
  };
  SmallHOracle out{0.0, 0.0};
  for (long i = 0; i <= samples; ++i) {
    const double x = x_max * static_cast<double>(i) / samples;
    const double v = f(x);
    if (v < out.worst_f) {
      out.worst_f = v;
      out.arg_worst = x;
    }
  }
  if (x0 > 0.0 && f(x0) < out.worst_f) {
    out.worst_f = f(x0);
    out.arg_worst = x0;
  }
  return out;
}

ThresholdsH thresholds_H(const TheoryConstants& tc) {
  validate(tc);
  ThresholdsH th;
  const double base = tc.c * tc.c * tc.lambda1 * tc.G * tc.G * tc.nu;
  const double ag = std::pow(tc.alpha, tc.gamma);
  th.mu_min = std::max({5.0 * base, ag * base, ag / tc.gamma});
  th.beta_min = base;
  const double a = constant_a(tc.gamma, tc.lambda1);
  const double h1 = std::sqrt(tc.nu / (2.0 * tc.mu * tc.c0));
  const double h2 = std::sqrt(tc.nu / (tc.beta * tc.c0));
  const double h3 = a * ag * std::pow(tc.eps / 2.0, tc.gamma / 2.0) *
                    std::pow(tc.nu, 1.0 - tc.gamma / 2.0) /
                    (tc.mu * std::sqrt(tc.c0));
  th.h_max = std::min({h1, h2, h3});
  const double eta = std::pow(tc.alpha, -tc.gamma);
  th.r_ceiling = std::min(std::exp(-1.0 / (tc.gamma * tc.mu * eta)),
                          std::pow(tc.mu * eta / (tc.mu * eta + 1.0),
                                   1.0 / tc.gamma));
  return th;
}

ThresholdsV thresholds_V(const TheoryConstants& tc) {
  validate(tc);
  ThresholdsV th;
  th.J = 2.0 * tc.c * std::log(2.0 * std::pow(tc.c, 1.5)) +
         4.0 * tc.c * std::log(1.0 + tc.G);
  const double mu1 = std::pow(std::sqrt(tc.c0) + 1.0 / std::sqrt(tc.lambda1),
                              tc.gamma) *
                     tc.c * tc.lambda1 * tc.lambda1 * tc.nu * tc.nu *
                     std::pow(1.0 + tc.G, 4);
  const double lg = std::pow(tc.lambda1, tc.gamma / 2.0);
  const double mu2 = 1.0 / (tc.gamma * lg);
  const double mu3 = 3.0 * tc.lambda1 * tc.nu * th.J * tc.G;
  th.mu_min = std::max({mu1, mu2, mu3});
  th.beta_min = mu3;
  const double a = constant_a_v(tc.gamma, tc.lambda1);
  const double h1 = tc.L;
  const double h2 = std::sqrt(tc.nu / (tc.mu * tc.c0));
  const double h3 = a * std::pow(tc.eps / 2.0, tc.gamma / 2.0) *
                    std::pow(tc.nu, 1.0 - tc.gamma / 2.0) /
                    (tc.mu * std::sqrt(tc.c0));
  th.h_max = std::min({h1, h2, h3});
  th.r_ceiling =
      std::min(std::exp(-1.0 / (tc.mu * tc.gamma * lg)),
               std::pow(tc.mu * lg / (tc.mu * lg + 1.0), 1.0 / tc.gamma));
  return th;
}

namespace {
double double_exponential(double t, double t0, double rate, double w0_sq) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("envelope: decay rate must be positive");
  }
  const double b = -(rate - 1.0) * std::log(w0_sq) / rate;
  if (!(b > 0.0)) {
    throw std::domain_error(
        "envelope: b <= 0, the error is not inside the super-exponential "
        "window");
  }
  const double A = std::exp(-1.0 / rate);
  return A * std::exp(-b * std::exp(rate * (t - t0)));
}
}  // namespace

double envelope_H(double t, double t0, double mu, double alpha, double gamma,
                  double w0_H2) {
  require_gamma(gamma);
  const double rate = mu * std::pow(alpha, -gamma) * gamma;
  return double_exponential(t, t0, rate, w0_H2);
}

double envelope_V(double t, double t0, double mu, double gamma, double lambda1,
                  double w0_V2) {
  require_gamma(gamma);
  const double rate = mu * gamma * std::pow(lambda1, gamma / 2.0);
  return double_exponential(t, t0, rate, w0_V2);
}

double estimate_M(double f_H2, double beta, double alpha, double G, double nu,
                  double v_H2) {
  return 2.0 * f_H2 +
         2.0 * beta * beta * alpha * alpha * (2.0 * G * G * nu * nu + v_H2);
}

double rhs_H(const TheoryConstants& tc, double v0_H2, double M, double t_a) {
  const double decay = std::exp(-tc.nu * tc.lambda1 * t_a);
  return decay * v0_H2 + M * (1.0 - decay) / (tc.beta * tc.nu * tc.lambda1);
}

double rhs_V(const TheoryConstants& tc, double v0_H2, double v0_V2, double M) {
  return std::exp(rhs_V_log(tc, v0_H2, v0_V2, M));
}

double rhs_V_log(const TheoryConstants& tc, double v0_H2, double v0_V2,
                 double M) {
  const double f1 = v0_H2 / tc.nu + tc.T * M / (tc.nu * tc.beta);
  const double f2 = v0_V2 / tc.nu + M / (tc.beta * tc.nu * tc.lambda1);
  const double expo =
      54.0 * std::pow(tc.c, 4) / std::pow(tc.nu, 3) * f1 * f1 * f2 * f2;
  return expo + std::log(v0_V2 + 4.0 * tc.T * M / tc.nu);
}

double switch_ceiling(double beta, double gamma, double lambda1) {
  require_gamma(gamma);
  const double lg = std::pow(lambda1, gamma / 2.0);
  return std::min(std::exp(-1.0 / (beta * gamma * lg)),
                  std::pow(beta * lg / (beta * lg + 1.0), 1.0 / gamma));
}

double switch_time_H(const TheoryConstants& tc, double t_a, double rhs_h,
                     double r_H) {
  validate(tc);
  const double denom =
      tc.beta / 2.0 - (tc.c * tc.c / (tc.T * tc.nu)) * 2.0 *
                          (1.0 + tc.lambda1 * tc.nu * tc.T) * tc.nu * tc.G *
                          tc.G;
  if (!(denom > 0.0)) {
    throw std::domain_error("switch_time_H: beta too small to certify");
  }
  // The bracket e^{-1-beta T} underflows for realistic beta T, so the
  // whole logarithm is assembled term by term.
  const double log_arg =
      2.0 * std::log(r_H) - (1.0 + tc.beta * tc.T) -
      std::log(2.0 * (2.0 * tc.nu * tc.nu * tc.G * tc.G + rhs_h));
  return t_a - log_arg / denom;
}

double switch_time_V(const TheoryConstants& tc, double t_a, double log_rhs_v,
                     double r_V) {
  validate(tc);
  const double J = thresholds_V(tc).J;
  if (!(tc.G > 0.0 && J > 0.0)) {
    throw std::domain_error("switch_time_V: needs G > 0 and J > 0");
  }
  // RHS_V overflows double for any realistic constants (a Gronwall
  // double exponential), so it arrives as a logarithm.
  const double big = 2.0 * tc.lambda1 * tc.nu * tc.nu * tc.G * tc.G;
  double log_sum;  // log(2 (big + e^{log_rhs_v}))
  if (log_rhs_v > 690.0) {
    log_sum = std::log(2.0) + log_rhs_v + std::log1p(big * std::exp(-log_rhs_v));
  } else {
    log_sum = std::log(2.0 * (big + std::exp(log_rhs_v)));
  }
  const double log_arg = 2.0 * std::log(r_V) - (1.0 + tc.beta * tc.T) - log_sum;
  return t_a - 6.0 / (5.0 * tc.G * J) * log_arg;
}

double existence_time_star(const TheoryConstants& tc, double h, double R,
                           double f_H2, double u_V2_time_integral) {
  const double root = std::sqrt(tc.c0) * h + 1.0 / std::sqrt(tc.lambda1);
  const double c_gamma = std::pow(2.0, 2.0 - tc.gamma) * tc.mu * tc.mu *
                         std::pow(root, 2.0 * (1.0 - tc.gamma));
  const double c_beta = 4.0 * tc.beta * tc.beta * root * root;
  const double denom =
      tc.nu * tc.lambda1 * R + f_H2 / (tc.nu * tc.nu * tc.lambda1) +
      c_gamma / (std::pow(tc.nu, 1.0 + tc.gamma) *
                 std::pow(tc.lambda1, tc.gamma)) *
          (std::pow(u_V2_time_integral, 1.0 - tc.gamma) +
           std::pow(R, 1.0 - tc.gamma)) +
      c_beta / tc.nu * (u_V2_time_integral + R);
  return R / denom;
}

}  // namespace nncda::theory
