#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "nncda/theory.hpp"

using namespace nncda::theory;

namespace {
constexpr double kPi = std::numbers::pi;

TheoryConstants worked_constants() {
  TheoryConstants tc;
  tc.c = 1.0;
  tc.c0 = 1.0 / (4.0 * kPi * kPi);
  tc.alpha = 1.0;
  tc.lambda1 = 1.0;
  tc.nu = 0.1;
  tc.G = 10.0;
  tc.gamma = 0.5;
  tc.mu = 51.0;
  tc.beta = 100.0;
  tc.T = 20.0;
  tc.eps = 1e-10;
  tc.L = 1.0;
  return tc;
}
}  // namespace

TEST_CASE("absorbing ball bounds") {
  SUBCASE("G = 0 zeroes the flow bounds but not the Au bound") {
    const AbsorbingBall b = absorbing_ball(0.0, 0.1, 4.0, 2.0, 1.5);
    CHECK(b.h2 == 0.0);
    CHECK(b.v2 == 0.0);
    CHECK(b.v2_window == 0.0);
    CHECK(b.au2_window == 0.0);
    CHECK(b.au2 == doctest::Approx(16.0 * 0.01 * 1.5).epsilon(1e-14));
  }
  SUBCASE("worked arithmetic at G=10, nu=0.1, lambda1=1") {
    const AbsorbingBall b = absorbing_ball(10.0, 0.1, 1.0, 2.0, 1.0);
    CHECK(b.h2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.v2 == doctest::Approx(2.0 * 0.01 * 100).epsilon(1e-14));
    CHECK(b.v2_window == doctest::Approx(2.0 * 1.2 * 100 * 0.1).epsilon(1e-14));
    CHECK(b.au2_window == b.v2_window);
    CHECK(b.au2 == doctest::Approx(0.01 * std::pow(11.0, 4)).epsilon(1e-14));
  }
  SUBCASE("doubling G quadruples the H bound") {
    const AbsorbingBall b1 = absorbing_ball(7.0, 0.05, 1.0, 2.0, 1.0);
    const AbsorbingBall b2 = absorbing_ball(14.0, 0.05, 1.0, 2.0, 1.0);
    CHECK(b2.h2 == doctest::Approx(4.0 * b1.h2).epsilon(1e-14));
  }
}

TEST_CASE("constant a: both closed forms, footnote bound") {
  CHECK(constant_a(0.5, 1.0) ==
        doctest::Approx(0.3388507513536918).epsilon(1e-13));
  for (double gamma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (double lambda1 : {1.0, 4.0 * kPi * kPi}) {
      const double a1 = constant_a(gamma, lambda1);
      const double a2 = constant_a_bracket(gamma, lambda1);
      CHECK(std::abs(a1 - a2) <= 1e-12 * a1);
      CHECK(a1 > 0.0);
      CHECK(a1 <= 0.5 * std::pow(lambda1, (1.0 - gamma) / 2.0) * (1 + 1e-12));
      // The V-theorem variant differs exactly by the lambda1 exponent.
      const double av = constant_a_v(gamma, lambda1);
      CHECK(std::abs(av - a2 * std::pow(lambda1, -gamma / 2.0)) <=
            1e-12 * av);
    }
  }
  CHECK_THROWS_AS(constant_a(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(constant_a(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("small-h delta") {
  SUBCASE("hand-computed bracket at gamma = 1/2") {
    // b = 0.75^3 - 0.75^4 = 0.10546875.
    CHECK(small_h_delta(1.0, 0.5, 0.01) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(small_h_delta(1.0, 0.5, 1e-6) ==
          doctest::Approx(0.05549055267050423).epsilon(1e-13));
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(small_h_delta(-1.0, 0.5, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(small_h_delta(1.0, 0.5, 0.0), std::invalid_argument);
  }
}

TEST_CASE("small-h oracle") {
  SUBCASE("guarantee at the worked example") {
    const double delta = small_h_delta(1.0, 0.5, 0.01);
    const double x0 = small_h_x0(1.0, 0.5, delta);
    const SmallHOracle r = small_h_oracle(1.0, 0.5, delta, 200000, 4.0 * x0);
    CHECK(r.worst_f >= -0.01 * (1.0 + 1e-9));
    CHECK(std::abs(r.arg_worst - x0) <= 1e-6);
  }
  SUBCASE("delta = 0 keeps f nonnegative with minimum at zero") {
    const SmallHOracle r = small_h_oracle(2.0, 0.3, 0.0, 100000, 10.0);
    CHECK(r.worst_f == 0.0);
  }
  SUBCASE("guarantee over an (a, gamma, eps) grid") {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double gamma : {0.1, 0.5, 0.9}) {
        for (double eps : {1e-2, 1e-4, 1e-6}) {
          const double delta = small_h_delta(a, gamma, eps);
          const double x0 = small_h_x0(a, gamma, delta);
          const SmallHOracle r =
              small_h_oracle(a, gamma, delta, 100000, 4.0 * x0);
          CHECK(r.worst_f >= -eps * (1.0 + 1e-9));
        }
      }
    }
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(small_h_oracle(1.0, 0.5, 0.1, 999, 10.0),
                    std::invalid_argument);
    const double x0 = small_h_x0(1.0, 0.5, 0.5);
    CHECK_THROWS_AS(small_h_oracle(1.0, 0.5, 0.5, 100000, 1.5 * x0),
                    std::invalid_argument);
  }
}

TEST_CASE("H-norm thresholds") {
  TheoryConstants tc = worked_constants();
  const ThresholdsH th = thresholds_H(tc);
  SUBCASE("worked max{50, 10, 2} example") {
    CHECK(th.mu_min == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(th.beta_min == doctest::Approx(10.0).epsilon(1e-14));
  }
  SUBCASE("alpha = 1 collapses the first two mu entries to a factor 5") {
    const double base = tc.c * tc.c * tc.lambda1 * tc.G * tc.G * tc.nu;
    CHECK(th.mu_min == doctest::Approx(5.0 * base));
  }
  SUBCASE("regime ceiling") {
    // min{e^{-1/(gamma mu)}, (mu/(mu+1))^{1/gamma}} at alpha = 1.
    const double e1 = std::exp(-1.0 / (0.5 * 51.0));
    const double e2 = std::pow(51.0 / 52.0, 2.0);
    CHECK(th.r_ceiling == doctest::Approx(std::min(e1, e2)).epsilon(1e-14));
  }
  SUBCASE("h_max shrinks like eps^{gamma/2}") {
    TheoryConstants a = tc, b = tc;
    a.eps = 1e-8;
    b.eps = 1e-10;
    const double ha = thresholds_H(a).h_max;
    const double hb = thresholds_H(b).h_max;
    CHECK(ha / hb ==
          doctest::Approx(std::pow(100.0, tc.gamma / 2.0)).epsilon(1e-12));
  }
  SUBCASE("mu_min is nondecreasing in G") {
    double prev = 0.0;
    for (double G : {1.0, 2.0, 5.0, 10.0, 50.0}) {
      TheoryConstants c = tc;
      c.G = G;
      const double v = thresholds_H(c).mu_min;
      CHECK(v >= prev);
      prev = v;
    }
  }
  SUBCASE("h_max is nonincreasing in mu") {
    double prev = 1e300;
    for (double mu : {10.0, 20.0, 80.0, 320.0}) {
      TheoryConstants c = tc;
      c.mu = mu;
      const double v = thresholds_H(c).h_max;
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("V-norm thresholds") {
  TheoryConstants tc = worked_constants();
  SUBCASE("J at G = 0 and G = 10") {
    TheoryConstants z = tc;
    z.G = 0.0;
    CHECK(thresholds_V(z).J ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(thresholds_V(tc).J ==
          doctest::Approx(10.977875452313373).epsilon(1e-13));
  }
  SUBCASE("beta_min = 3 lambda1 nu J G") {
    const ThresholdsV tv = thresholds_V(tc);
    CHECK(tv.beta_min ==
          doctest::Approx(3.0 * 0.1 * tv.J * 10.0).epsilon(1e-13));
    CHECK(tv.mu_min >= tv.beta_min);
  }
  SUBCASE("mu_min grows with G") {
    TheoryConstants lo = tc, hi = tc;
    lo.G = 5.0;
    hi.G = 20.0;
    CHECK(thresholds_V(hi).mu_min > thresholds_V(lo).mu_min);
  }
}

TEST_CASE("double-exponential envelopes") {
  SUBCASE("anchors at the initial error when the rate is 2") {
    // mu alpha^{-gamma} gamma = 2 with w0 = e^{-1}.
    const double w0 = std::exp(-1.0);
    const double v = envelope_H(3.0, 3.0, 4.0, 1.0, 0.5, w0);
    CHECK(v == doctest::Approx(w0).epsilon(1e-14));
  }
  SUBCASE("strictly decreasing in t") {
    double prev = 1e300;
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.1 * i;
      const double v = envelope_H(t, 0.0, 4.0, 1.0, 0.5, 0.2);
      CHECK(v < prev);
      prev = v;
    }
  }
  SUBCASE("decay exponent is linear in gamma") {
    // Extract the inner rate from the double log and compare at two gammas.
    auto rate_of = [](double gamma) {
      const double w0 = 0.05;
      const double mu = 30.0;
      const double A = std::exp(-1.0 / (mu * gamma));
      const double v1 = envelope_H(0.1, 0.0, mu, 1.0, gamma, w0);
      const double v2 = envelope_H(0.2, 0.0, mu, 1.0, gamma, w0);
      return (std::log(-std::log(v2 / A)) - std::log(-std::log(v1 / A))) /
             0.1;
    };
    CHECK(rate_of(0.2) == doctest::Approx(30.0 * 0.2).epsilon(1e-9));
    CHECK(rate_of(0.1) == doctest::Approx(30.0 * 0.1).epsilon(1e-9));
  }
  SUBCASE("outside the super-exponential window") {
    CHECK_THROWS_AS(envelope_H(1.0, 0.0, 4.0, 1.0, 0.5, 1.5),
                    std::domain_error);
  }
  SUBCASE("V envelope mirrors the H envelope with its own rate") {
    const double w0 = std::exp(-1.0);
    // mu gamma lambda1^{gamma/2} = 2: mu = 4, gamma = 0.5, lambda1 = 1.
    CHECK(envelope_V(2.0, 2.0, 4.0, 0.5, 1.0, w0) ==
          doctest::Approx(w0).epsilon(1e-14));
  }
}

TEST_CASE("switch time, H version") {
  TheoryConstants tc = worked_constants();
  const double t_a = 5.0;

  SUBCASE("worked instance against a high-precision evaluation") {
    const double M = estimate_M(0.01, tc.beta, tc.alpha, tc.G, tc.nu, 0.0);
    CHECK(M == doctest::Approx(40000.02).epsilon(1e-14));
    const double rhs = rhs_H(tc, 0.0, M, t_a);
    CHECK(rhs == doctest::Approx(1573.8781480881469).epsilon(1e-13));
    const double r_H = switch_ceiling(tc.beta, tc.gamma, tc.lambda1);
    CHECK(r_H == doctest::Approx(0.9801986733067553).epsilon(1e-14));
    const double t0 = switch_time_H(tc, t_a, rhs, r_H);
    CHECK(t0 == doctest::Approx(105.45478575653928).epsilon(1e-12));
  }

  SUBCASE("bisection solve of the displayed inequality agrees to 1e-9") {
    const double M = estimate_M(0.01, tc.beta, tc.alpha, tc.G, tc.nu, 0.0);
    const double rhs = rhs_H(tc, 0.0, M, t_a);
    const double r_H = switch_ceiling(tc.beta, tc.gamma, tc.lambda1);
    const double t0 = switch_time_H(tc, t_a, rhs, r_H);
    // g(t) = log LHS(t) - log R_H^2, decreasing in t; root = earliest
    // admissible switch time.
    const double D =
        tc.beta / 2.0 - (tc.c * tc.c / (tc.T * tc.nu)) * 2.0 *
                            (1.0 + tc.lambda1 * tc.nu * tc.T) * tc.nu *
                            tc.G * tc.G;
    auto log_lhs = [&](double t) {
      return std::log(2.0 * (2.0 * tc.nu * tc.nu * tc.G * tc.G + rhs)) +
             (1.0 + tc.beta * tc.T) - D * (t - t_a);
    };
    double lo = t_a, hi = t_a + 1e6;
    REQUIRE(log_lhs(lo) > 2.0 * std::log(r_H));
    REQUIRE(log_lhs(hi) < 2.0 * std::log(r_H));
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      if (log_lhs(mid) > 2.0 * std::log(r_H)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    CHECK(std::abs(t0 - 0.5 * (lo + hi)) <= 1e-9);
  }

  SUBCASE("log-argument of one gives t0 = t_a") {
    // Mild constants keep the bracket representable.
    TheoryConstants mild = tc;
    mild.G = 0.1;
    mild.beta = 1.0;
    mild.T = 11.0;
    const double rhs = 3.0;
    // R_H chosen so the bracket equals 1:
    // 2 log R = (1 + beta T) + log(2 (2 nu^2 G^2 + RHS)).
    const double log_r =
        0.5 * ((1.0 + mild.beta * mild.T) +
               std::log(2.0 * (2.0 * mild.nu * mild.nu * mild.G * mild.G +
                               rhs)));
    const double t0 = switch_time_H(mild, t_a, rhs, std::exp(log_r));
    CHECK(t0 == doctest::Approx(t_a).epsilon(1e-10));
  }

  SUBCASE("doubling R_H advances t0 by 2 log(2) / D") {
    const double rhs = 3.0;
    const double t1 = switch_time_H(tc, t_a, rhs, 0.25);
    const double t2 = switch_time_H(tc, t_a, rhs, 0.5);
    const double D = 20.0;
    CHECK(t1 - t2 == doctest::Approx(2.0 * std::log(2.0) / D).epsilon(1e-12));
  }

  SUBCASE("beta too small to certify") {
    TheoryConstants weak = tc;
    weak.beta = 1.0;
    CHECK_THROWS_AS(switch_time_H(weak, t_a, 3.0, 0.5), std::domain_error);
  }
}

TEST_CASE("switch time, V version") {
  TheoryConstants tc = worked_constants();
  const double M = estimate_M(0.01, tc.beta, tc.alpha, tc.G, tc.nu, 0.0);
  const double log_rhs = rhs_V_log(tc, 0.0, 0.0, M);
  CHECK(log_rhs > 1e3);  // the Gronwall bound is astronomically weak
  const double r_V = switch_ceiling(tc.beta, tc.gamma, tc.lambda1);
  const double t0 = switch_time_V(tc, 5.0, log_rhs, r_V);
  CHECK(std::isfinite(t0));
  CHECK(t0 > 5.0);
  // Larger R_V certifies earlier (checked at a representable RHS scale).
  CHECK(switch_time_V(tc, 5.0, 10.0, 0.9) <
        switch_time_V(tc, 5.0, 10.0, 0.3));
}

TEST_CASE("existence horizon is dimensionally consistent") {
  TheoryConstants tc = worked_constants();
  const double h = 0.05, R = 3.0, f_H2 = 0.01, Usq = 7.0;
  const double base = existence_time_star(tc, h, R, f_H2, Usq);
  CHECK(base > 0.0);
  // Rescale lengths by s and times by tau; T* must scale by tau.
  const double s = 2.3, tau = 0.7;
  TheoryConstants sc = tc;
  sc.nu = tc.nu * s * s / tau;
  sc.lambda1 = tc.lambda1 / (s * s);
  sc.mu = tc.mu * std::pow(s, 2.0 * tc.gamma) / std::pow(tau, 1.0 + tc.gamma);
  sc.beta = tc.beta / tau;
  sc.T = tc.T * tau;
  sc.L = tc.L * s;
  const double scaled = existence_time_star(
      sc, h * s, R * s * s / tau, f_H2 * std::pow(s, 4) / std::pow(tau, 4),
      Usq * s * s / tau);
  CHECK(scaled == doctest::Approx(tau * base).epsilon(1e-12));
}

TEST_CASE("theory constants validation") {
  TheoryConstants tc = worked_constants();
  tc.gamma = 0.0;
  CHECK_THROWS_AS(validate(tc), std::invalid_argument);
  tc.gamma = 0.5;
  tc.nu = -0.1;
  CHECK_THROWS_AS(validate(tc), std::invalid_argument);
}
