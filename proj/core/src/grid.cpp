#include "nncda/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nncda {

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid: n must be even and >= 8");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("grid: L must be positive");
  }
  const double k0 = 2.0 * std::numbers::pi / length;
  lambda1_ = k0 * k0;
  cutoff_ = n / 3;

  k_index_.resize(n);
  wavenumber_.resize(n);
  keep_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int k = (i <= n / 2) ? i : i - n;
    k_index_[i] = k;
    wavenumber_[i] = k0 * k;
    keep_[i] = std::abs(k) <= cutoff_ ? 1 : 0;
  }
}

GridPtr make_grid(int n, double length) {
  return std::make_shared<const Grid>(n, length);
}

}  // namespace nncda
