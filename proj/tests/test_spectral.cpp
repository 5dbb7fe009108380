#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>

#include "nncda/checkpoint.hpp"
#include "nncda/fft.hpp"
#include "nncda/ops.hpp"
#include "nncda/rng.hpp"

using namespace nncda;

namespace {
constexpr double kPi = std::numbers::pi;

SpectralField single_mode(GridPtr grid, int k1, int k2, Complex amp) {
  SpectralField f(grid);
  const int n = f.n();
  const int i = (k1 % n + n) % n;
  const int j = (k2 % n + n) % n;
  f.at(i, j) = amp;
  f.at((n - i) % n, (n - j) % n) = std::conj(amp);
  return f;
}
}  // namespace

TEST_CASE("grid basics and lambda1") {
  auto g1 = make_grid(8, 1.0);
  CHECK(g1->lambda1() == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-14));
  auto g2 = make_grid(8, 2.0 * kPi);
  CHECK(g2->lambda1() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(16, -1.0), std::invalid_argument);
}

TEST_CASE("dealias mask keeps exactly the 2/3-rule modes at n=1024") {
  auto g = make_grid(1024, 2.0 * kPi);
  // Independent enumeration of the expected survivor count.
  long expected = 0;
  for (int a = -512; a < 512; ++a) {
    for (int b = -512; b < 512; ++b) {
      if (std::abs(a) <= 341 && std::abs(b) <= 341) ++expected;
    }
  }
  CHECK(expected == 683L * 683L);
  long kept = 0;
  int max_comp = 0;
  for (int i = 0; i < 1024; ++i) {
    for (int j = 0; j < 1024; ++j) {
      if (g->dealias_keep(i, j)) {
        ++kept;
        max_comp = std::max({max_comp, std::abs(g->k_index(i)),
                             std::abs(g->k_index(j))});
      }
    }
  }
  CHECK(kept == expected);
  CHECK(max_comp == 341);
}

TEST_CASE("mask is symmetric under k -> -k") {
  auto g = make_grid(32, 1.0);
  const int n = g->n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(g->dealias_keep(i, j) ==
            g->dealias_keep((n - i) % n, (n - j) % n));
    }
  }
}

TEST_CASE("transform round trip") {
  auto g = make_grid(16, 2.0 * kPi);
  SUBCASE("single mode k=(1,0)") {
    const SpectralField f = single_mode(g, 1, 0, Complex{1.0, 0.0});
    const SpectralField r = transform_roundtrip(f);
    CHECK(h_norm(r - f) <= 1e-12 * h_norm(f));
  }
  SUBCASE("zero field") {
    const SpectralField z(g);
    CHECK(h_norm(transform_roundtrip(z)) == 0.0);
  }
  SUBCASE("random field") {
    const SpectralField f = random_field(g, 7);
    const SpectralField r = transform_roundtrip(f);
    CHECK(h_norm(r - f) <= 1e-12 * h_norm(f));
  }
}

TEST_CASE("Parseval: physical quadrature equals the Plancherel sum") {
  auto g = make_grid(16, 2.0 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const SpectralField f = random_field(g, 100 + trial, trial % 3);
    const double quad = physical_l2_quadrature(f);
    const double plan = plancherel_l2(f);
    CHECK(std::abs(quad - plan) <= 1e-10 * plan);
  }
}

TEST_CASE("norms") {
  auto g = make_grid(16, 2.0 * kPi);
  SUBCASE("zero field has zero norms") {
    const SpectralField z(g);
    CHECK(h_norm(z) == 0.0);
    CHECK(v_norm(z) == 0.0);
    CHECK(a_norm(z) == 0.0);
  }
  SUBCASE("single lowest mode attains Poincare equality") {
    const SpectralField f = single_mode(g, 1, 0, Complex{0.0, 0.7});
    const double k0 = 2.0 * kPi / g->length();
    CHECK(v_norm(f) == doctest::Approx(k0 * h_norm(f)).epsilon(1e-13));
  }
  SUBCASE("two-mode field against a spectral-gradient oracle") {
    SpectralField f(g);
    const int n = g->n();
    f.at(1, 0) = Complex{0.5, 0.0};
    f.at(n - 1, 0) = Complex{0.5, 0.0};
    f.at(3, 0) = Complex{1.0, 0.0};
    f.at(n - 3, 0) = Complex{1.0, 0.0};
    // |k| = 1 carries 2 * 0.25, |k| = 3 carries 2 * 1.
    CHECK(v_norm2(f) == doctest::Approx(1.0 * 0.5 + 9.0 * 2.0).epsilon(1e-13));
    // Differentiate spectrally and take h_norm.
    SpectralField dx(g), dy(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Complex c = f.at(i, j);
        const Complex ic{-c.imag(), c.real()};
        dx.at(i, j) = g->wavenumber(i) * ic;
        dy.at(i, j) = g->wavenumber(j) * ic;
      }
    }
    CHECK(v_norm2(f) ==
          doctest::Approx(h_norm2(dx) + h_norm2(dy)).epsilon(1e-12));
  }
}

TEST_CASE("Poincare inequalities hold on random fields") {
  auto g = make_grid(32, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const SpectralField f = random_field(g, 300 + trial, trial % 3);
    CHECK(v_norm2(f) >= g->lambda1() * h_norm2(f) * (1.0 - 1e-12));
    CHECK(a_norm2(f) >= g->lambda1() * v_norm2(f) * (1.0 - 1e-12));
  }
}

TEST_CASE("grad_perp") {
  auto g = make_grid(32, 2.0 * kPi);
  SUBCASE("psi = sin(x) gives u = (0, cos(x))") {
    // sin(x) = (e^{ix} - e^{-ix}) / (2i) -> c(1,0) = -i/2.
    const SpectralField psi = single_mode(g, 1, 0, Complex{0.0, -0.5});
    const VelocityField u = grad_perp(psi);
    CHECK(h_norm(u.x) <= 1e-14);
    // cos(x) -> c(1,0) = 1/2.
    const SpectralField expected = single_mode(g, 1, 0, Complex{0.5, 0.0});
    CHECK(h_norm(u.y - expected) <= 1e-14);
  }
  SUBCASE("zero stream function") {
    const VelocityField u = grad_perp(SpectralField(g));
    CHECK(h_norm(u) == 0.0);
  }
  SUBCASE("psi = cos(x)cos(y) (symbolic oracle)") {
    // cos(x)cos(y) has c = 1/4 on all four (+-1, +-1) modes.
    SpectralField psi(g);
    const int n = g->n();
    for (int si : {1, n - 1}) {
      for (int sj : {1, n - 1}) {
        psi.at(si, sj) = Complex{0.25, 0.0};
      }
    }
    const VelocityField u = grad_perp(psi);
    // u = (cos(x)sin(y), -sin(x)cos(y)), sampled pointwise.
    const auto ux = to_physical(u.x);
    const auto uy = to_physical(u.y);
    for (int i = 0; i < n; i += 5) {
      const double x = g->length() * i / n;
      for (int j = 0; j < n; j += 7) {
        const double y = g->length() * j / n;
        CHECK(ux[static_cast<std::size_t>(i) * n + j] ==
              doctest::Approx(std::cos(x) * std::sin(y)).epsilon(1e-12));
        CHECK(uy[static_cast<std::size_t>(i) * n + j] ==
              doctest::Approx(-std::sin(x) * std::cos(y)).epsilon(1e-12));
      }
    }
    CHECK(divergence_defect(u) <= 1e-12);
  }
  SUBCASE("v_norm of psi equals h_norm of the velocity") {
    const SpectralField psi = random_field(g, 42);
    CHECK(h_norm(grad_perp(psi)) ==
          doctest::Approx(v_norm(psi)).epsilon(1e-12));
  }
  SUBCASE("divergence-free on random inputs") {
    for (int trial = 0; trial < 20; ++trial) {
      CHECK(divergence_defect(grad_perp(random_field(g, 900 + trial))) <=
            1e-12);
    }
  }
}

TEST_CASE("laplacian and its inverse") {
  auto g = make_grid(16, 2.0 * kPi);
  SUBCASE("single |k| = 1 mode multiplies by -1") {
    const SpectralField f = single_mode(g, 0, 1, Complex{2.0, 0.0});
    const SpectralField lf = laplacian(f);
    CHECK(lf.at(0, 1) == Complex{-2.0, 0.0});
  }
  SUBCASE("zero maps to zero") {
    CHECK(h_norm(laplacian(SpectralField(g))) == 0.0);
  }
  SUBCASE("random round trip") {
    const SpectralField f = random_field(g, 5);
    const SpectralField r = inv_laplacian(laplacian(f));
    CHECK(h_norm(r - f) <= 1e-12 * h_norm(f));
    CHECK(r.coeffs()[0] == Complex{0.0, 0.0});
  }
}

TEST_CASE("dealias") {
  auto g = make_grid(16, 1.0);  // cutoff floor(16/3) = 5
  SUBCASE("field inside the mask is unchanged") {
    const SpectralField f = single_mode(g, 4, 3, Complex{1.0, 0.5});
    CHECK(h_norm(dealias(f) - f) == 0.0);
  }
  SUBCASE("mode at index n/2 - 1 is zeroed") {
    const SpectralField f = single_mode(g, 7, 0, Complex{1.0, 0.0});
    CHECK(h_norm(dealias(f)) == 0.0);
  }
  SUBCASE("idempotence on a random field") {
    SpectralField f = random_field(g, 11);
    // Push some content outside the mask.
    f.at(7, 7) = Complex{1.0, 0.0};
    f.at(9, 9) = Complex{1.0, 0.0};
    const SpectralField once = dealias(f);
    const SpectralField twice = dealias(once);
    CHECK(h_norm(twice - once) == 0.0);
  }
}

TEST_CASE("operations preserve reality and the mean-free invariant") {
  auto g = make_grid(16, 2.0 * kPi);
  const SpectralField f = random_field(g, 77);
  for (const SpectralField& out :
       {transform_roundtrip(f), laplacian(f), inv_laplacian(f), dealias(f),
        curl(grad_perp(f))}) {
    CHECK(reality_defect(out) <= 1e-12);
    CHECK(out.coeffs()[0] == Complex{0.0, 0.0});
  }
}

TEST_CASE("checkpoint round trip is bit exact") {
  auto g = make_grid(16, 2.0 * kPi);
  const SpectralField f = random_field(g, 13);
  const std::string path = "checkpoint_test.nncda";
  write_checkpoint(path, f, 1.25);
  const Checkpoint cp = read_checkpoint(path);
  CHECK(cp.t == 1.25);
  CHECK(cp.psi.n() == 16);
  CHECK(cp.psi.grid()->length() == g->length());
  REQUIRE(cp.psi.coeffs().size() == f.coeffs().size());
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    CHECK(cp.psi.coeffs()[i] == f.coeffs()[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("checkpoint binary layout") {
  auto g = make_grid(8, 1.0);
  SpectralField f(g);
  f.at(1, 0) = Complex{1.0, -2.0};
  f.at(7, 0) = Complex{1.0, 2.0};
  const std::string path = "checkpoint_layout.nncda";
  write_checkpoint(path, f, 0.5);
  std::ifstream is(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(is)),
                          std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 7u + 4u + 8u + 8u + 64u * 16u);
  CHECK(std::string(bytes.data(), 6) == "NNCDA1");
  CHECK(bytes[6] == '\0');
  CHECK(static_cast<unsigned char>(bytes[7]) == 8);  // little-endian u32 n
  CHECK(bytes[8] == 0);
  // Coefficient (1, 0) sits at row-major slot 8, after the 27-byte header.
  double re = 0.0, im = 0.0;
  std::memcpy(&re, bytes.data() + 27 + 8 * 16, 8);
  std::memcpy(&im, bytes.data() + 27 + 8 * 16 + 8, 8);
  CHECK(re == 1.0);
  CHECK(im == -2.0);
  std::remove(path.c_str());

  CHECK_THROWS(read_checkpoint("does_not_exist.nncda"));
}
