#pragma once

#include <complex>
#include <vector>

#include "nncda/grid.hpp"

namespace nncda {

using Complex = std::complex<double>;

/// Mean-free periodic scalar field stored as Fourier coefficients.
///
/// The physical field is f(x) = sum_k c_k exp(i kappa . x), so a real
/// field satisfies c(-k) = conj(c(k)) and the k = 0 coefficient is kept
/// exactly zero (mean-free).  Plancherel with this normalization reads
/// (1/n^2) sum_x |f(x)|^2 = sum_k |c_k|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridPtr grid)
      : grid_(std::move(grid)), c_(grid_->size(), Complex{0.0, 0.0}) {}

  const GridPtr& grid() const { return grid_; }
  int n() const { return grid_->n(); }

  Complex& at(int i, int j) { return c_[static_cast<std::size_t>(i) * n() + j]; }
  const Complex& at(int i, int j) const {
    return c_[static_cast<std::size_t>(i) * n() + j];
  }

  std::vector<Complex>& coeffs() { return c_; }
  const std::vector<Complex>& coeffs() const { return c_; }

  void set_zero();
  void zero_mean_mode() { c_[0] = Complex{0.0, 0.0}; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    a += b;
    return a;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
  }
  friend SpectralField operator*(double s, SpectralField f) {
    f *= s;
    return f;
  }

 private:
  GridPtr grid_;
  std::vector<Complex> c_;
};

/// Divergence-free velocity as a pair of mean-free scalar components.
struct VelocityField {
  SpectralField x;
  SpectralField y;

  VelocityField() = default;
  explicit VelocityField(GridPtr grid) : x(grid), y(std::move(grid)) {}

  const GridPtr& grid() const { return x.grid(); }

  VelocityField& operator+=(const VelocityField& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  VelocityField& operator-=(const VelocityField& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  VelocityField& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend VelocityField operator-(VelocityField a, const VelocityField& b) {
    a -= b;
    return a;
  }
  friend VelocityField operator*(double s, VelocityField f) {
    f *= s;
    return f;
  }
};

// Plancherel norms.  h_norm is the L^2 amplitude sum, v_norm weights by
// |kappa|^2 (H^1 seminorm), a_norm by |kappa|^4 (the Stokes operator level).
double h_norm2(const SpectralField& f);
double v_norm2(const SpectralField& f);
double a_norm2(const SpectralField& f);
double h_norm(const SpectralField& f);
double v_norm(const SpectralField& f);
double a_norm(const SpectralField& f);

double h_norm2(const VelocityField& u);
double h_norm(const VelocityField& u);
double v_norm2(const VelocityField& u);
double v_norm(const VelocityField& u);

/// Real L^2 inner product sum_k Re(a_k conj(b_k)).
double inner_h(const SpectralField& a, const SpectralField& b);
double inner_h(const VelocityField& a, const VelocityField& b);

/// Largest relative deviation from the reality condition c(-k) = conj(c(k)).
double reality_defect(const SpectralField& f);

/// Largest relative divergence k . u_hat(k) over the spectrum.
double divergence_defect(const VelocityField& u);

void require_same_grid(const SpectralField& a, const SpectralField& b);

}  // namespace nncda
