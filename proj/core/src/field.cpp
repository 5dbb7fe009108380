#include "nncda/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nncda {

void SpectralField::set_zero() {
  std::fill(c_.begin(), c_.end(), Complex{0.0, 0.0});
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

namespace {

double weighted_norm2(const SpectralField& f, int kappa_power) {
  const Grid& g = *f.grid();
  const int n = g.n();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double m = std::norm(f.at(i, j));
      if (kappa_power == 0) {
        sum += m;
      } else {
        const double k2 = g.k2(i, j);
        sum += (kappa_power == 2) ? k2 * m : k2 * k2 * m;
      }
    }
  }
  return sum;
}

}  // namespace

double h_norm2(const SpectralField& f) { return weighted_norm2(f, 0); }
double v_norm2(const SpectralField& f) { return weighted_norm2(f, 2); }
double a_norm2(const SpectralField& f) { return weighted_norm2(f, 4); }
double h_norm(const SpectralField& f) { return std::sqrt(h_norm2(f)); }
double v_norm(const SpectralField& f) { return std::sqrt(v_norm2(f)); }
double a_norm(const SpectralField& f) { return std::sqrt(a_norm2(f)); }

double h_norm2(const VelocityField& u) { return h_norm2(u.x) + h_norm2(u.y); }
double h_norm(const VelocityField& u) { return std::sqrt(h_norm2(u)); }
double v_norm2(const VelocityField& u) { return v_norm2(u.x) + v_norm2(u.y); }
double v_norm(const VelocityField& u) { return std::sqrt(v_norm2(u)); }

double inner_h(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  double sum = 0.0;
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    sum += ca[i].real() * cb[i].real() + ca[i].imag() * cb[i].imag();
  }
  return sum;
}

double inner_h(const VelocityField& a, const VelocityField& b) {
  return inner_h(a.x, b.x) + inner_h(a.y, b.y);
}

double reality_defect(const SpectralField& f) {
  const int n = f.n();
  const double scale = std::max(h_norm(f), 1e-300);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int im = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int jm = (n - j) % n;
      const Complex d = f.at(i, j) - std::conj(f.at(im, jm));
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst / scale;
}

double divergence_defect(const VelocityField& u) {
  const Grid& g = *u.grid();
  const int n = g.n();
  const double scale = std::max(v_norm(u.x) + v_norm(u.y), 1e-300);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      worst = std::max(worst, std::abs(kx * u.x.at(i, j) + ky * u.y.at(i, j)));
    }
  }
  return worst / scale;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!a.grid() || !b.grid() || !(*a.grid() == *b.grid())) {
    throw std::invalid_argument("fields live on different grids");
  }
}

}  // namespace nncda
