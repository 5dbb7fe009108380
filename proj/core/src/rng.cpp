#include "nncda/rng.hpp"

#include <cmath>
#include <numbers>

#include "nncda/ops.hpp"

namespace nncda {

double GaussianRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  have_spare_ = true;
  return r * std::cos(phi);
}

SpectralField random_field(GridPtr grid, std::uint64_t seed, double decay) {
  GaussianRng rng(seed);
  SpectralField f(std::move(grid));
  const Grid& g = *f.grid();
  const int n = g.n();
  // Assign the half lattice k1 > 0 or (k1 == 0, k2 > 0); conjugate the rest.
  for (int i = 0; i < n; ++i) {
    const int k1 = g.k_index(i);
    for (int j = 0; j < n; ++j) {
      const int k2 = g.k_index(j);
      if (!(k1 > 0 || (k1 == 0 && k2 > 0))) continue;
      if (!g.dealias_keep(i, j)) continue;
      const double amp =
          1.0 / std::pow(1.0 + std::sqrt(double(g.index_mag2(i, j))), decay);
      const Complex c{amp * rng.normal(), amp * rng.normal()};
      f.at(i, j) = c;
      const int im = (n - i) % n;
      const int jm = (n - j) % n;
      f.at(im, jm) = std::conj(c);
    }
  }
  f.zero_mean_mode();
  return f;
}

VelocityField random_velocity(GridPtr grid, std::uint64_t seed, double decay) {
  return grad_perp(random_field(std::move(grid), seed, decay));
}

}  // namespace nncda
