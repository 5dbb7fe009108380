#include "nncda/forcing.hpp"

#include <cmath>
#include <stdexcept>

#include "nncda/rng.hpp"

namespace nncda {

double forcing_velocity_norm(const SpectralField& curl_f) {
  const Grid& g = *curl_f.grid();
  const int n = g.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double k2 = g.k2(i, j);
      if (k2 > 0.0) sum += std::norm(curl_f.at(i, j)) / k2;
    }
  }
  return std::sqrt(sum);
}

double grashof(const SpectralField& curl_f, double nu) {
  const double lambda1 = curl_f.grid()->lambda1();
  return forcing_velocity_norm(curl_f) / (lambda1 * nu * nu);
}

SpectralField make_forcing(GridPtr grid, std::uint64_t seed, int k_min,
                           int k_max, double target_G, double nu) {
  const Grid& g = *grid;
  if (!(k_min > 0 && k_min < k_max && k_max < g.n() / 3)) {
    throw std::invalid_argument(
        "make_forcing: need 0 < k_min < k_max < n/3");
  }
  GaussianRng rng(seed);
  SpectralField f(std::move(grid));
  const int n = g.n();
  const long lo = static_cast<long>(k_min) * k_min;
  const long hi = static_cast<long>(k_max) * k_max;
  std::size_t assigned = 0;
  for (int i = 0; i < n; ++i) {
    const int k1 = g.k_index(i);
    for (int j = 0; j < n; ++j) {
      const int k2 = g.k_index(j);
      if (!(k1 > 0 || (k1 == 0 && k2 > 0))) continue;
      const long mag2 = g.index_mag2(i, j);
      if (mag2 < lo || mag2 > hi) continue;
      const Complex c{rng.normal(), rng.normal()};
      f.at(i, j) = c;
      f.at((n - i) % n, (n - j) % n) = std::conj(c);
      ++assigned;
    }
  }
  if (assigned == 0) {
    throw std::invalid_argument("make_forcing: empty wavenumber shell");
  }
  const double current = grashof(f, nu);
  f *= target_G / current;
  return f;
}

}  // namespace nncda
