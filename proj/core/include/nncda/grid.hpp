#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace nncda {

/// Uniform periodic grid on [0, L)^2 together with its Fourier lattice.
///
/// Spectral data lives on the full n x n complex lattice in FFT index
/// order: array slot (i, j) maps to the integer wavenumber pair
/// (k1(i), k2(j)) with k(i) = i for i <= n/2 and i - n otherwise.
/// Physical wavenumbers carry the 2*pi/L scaling.  The dealias mask
/// implements the square 2/3 truncation: a mode is kept iff both index
/// components have magnitude <= n/3.
class Grid {
 public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }

  /// Smallest positive eigenvalue of -Laplace on the domain, (2*pi/L)^2.
  double lambda1() const { return lambda1_; }

  /// Signed integer wavenumber for FFT slot i in [0, n).
  int k_index(int i) const { return k_index_[i]; }

  /// Physical wavenumber (2*pi/L) * k_index(i).
  double wavenumber(int i) const { return wavenumber_[i]; }

  /// Squared physical wavenumber |kappa|^2 of slot (i, j).
  double k2(int i, int j) const {
    return wavenumber_[i] * wavenumber_[i] + wavenumber_[j] * wavenumber_[j];
  }

  /// Squared integer index magnitude k1^2 + k2^2 of slot (i, j).
  long index_mag2(int i, int j) const {
    long a = k_index_[i], b = k_index_[j];
    return a * a + b * b;
  }

  bool dealias_keep(int i, int j) const {
    return keep_[i] && keep_[j];
  }

  /// Largest index magnitude kept per component, floor(n/3).
  int dealias_cutoff() const { return cutoff_; }

  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  int n_;
  double length_;
  double lambda1_;
  int cutoff_;
  std::vector<int> k_index_;
  std::vector<double> wavenumber_;
  std::vector<std::uint8_t> keep_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a grid.  Rejects odd n and n < 8.
GridPtr make_grid(int n, double length);

}  // namespace nncda
