#pragma once

#include <memory>
#include <vector>

#include "nncda/field.hpp"

namespace nncda {

/// Real/half-spectrum transform pair for one grid size.
///
/// Physical fields are real, so transforms run through FFTW's r2c/c2r
/// kernels on the packed half spectrum (n rows, n/2+1 columns); the full
/// lattice is reconstructed by conjugate symmetry.  Owns its FFTW plans
/// and work buffers, so one instance must stay confined to a single
/// execution context; use thread_fft() for a per-thread cached instance.
/// Plans use estimate mode, which keeps plan selection (and therefore
/// arithmetic) reproducible from run to run.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int n() const { return n_; }
  int half_cols() const { return n_ / 2 + 1; }
  std::size_t half_size() const {
    return static_cast<std::size_t>(n_) * half_cols();
  }

  // Raw-buffer interface for hot loops.  c2r() consumes half_buffer()
  // into real_buffer(); r2c() transforms real_buffer() into
  // half_buffer() without normalization (callers fold in 1/n^2).
  Complex* half_buffer();
  double* real_buffer();
  void c2r();
  void r2c();

  /// Spectral coefficients (full lattice) -> physical samples.
  void inverse(const std::vector<Complex>& coeffs, std::vector<double>& phys);

  /// Physical samples -> full-lattice coefficients, normalized by 1/n^2;
  /// conjugate symmetry holds exactly by construction.
  void forward(const std::vector<double>& phys, std::vector<Complex>& coeffs);

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

/// Per-thread transform cache keyed by grid size.
Fft& thread_fft(int n);

/// Physical-space samples of a spectral field, row-major with
/// x = i * L/n varying over rows.
std::vector<double> to_physical(const SpectralField& f);

/// Spectral field from physical samples; the mean mode is zeroed.
SpectralField from_physical(GridPtr grid, const std::vector<double>& phys);

/// Forward-then-inverse round trip.
SpectralField transform_roundtrip(const SpectralField& f);

/// Physical-space L^2 quadrature (L/n)^2 * sum |f(x)|^2 over grid points.
double physical_l2_quadrature(const SpectralField& f);

/// Plancherel value of the same integral, L^2 * sum |c_k|^2.
double plancherel_l2(const SpectralField& f);

}  // namespace nncda
