#include "nncda/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nncda {

namespace {
// fftw plan creation/destruction is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

Fft::Fft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  const std::size_t rcount = static_cast<std::size_t>(n) * n;
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->rbuf = fftw_alloc_real(rcount);
  impl_->cbuf = fftw_alloc_complex(half_size());
  if (!impl_->rbuf || !impl_->cbuf) throw std::bad_alloc();
  impl_->r2c = fftw_plan_dft_r2c_2d(n, n, impl_->rbuf, impl_->cbuf,
                                    FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  impl_->c2r = fftw_plan_dft_c2r_2d(n, n, impl_->cbuf, impl_->rbuf,
                                    FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  if (!impl_->r2c || !impl_->c2r) throw std::runtime_error("fftw plan failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->r2c) fftw_destroy_plan(impl_->r2c);
  if (impl_->c2r) fftw_destroy_plan(impl_->c2r);
  if (impl_->rbuf) fftw_free(impl_->rbuf);
  if (impl_->cbuf) fftw_free(impl_->cbuf);
}

Complex* Fft::half_buffer() {
  return reinterpret_cast<Complex*>(impl_->cbuf);
}

double* Fft::real_buffer() { return impl_->rbuf; }

void Fft::c2r() { fftw_execute(impl_->c2r); }

void Fft::r2c() { fftw_execute(impl_->r2c); }

void Fft::inverse(const std::vector<Complex>& coeffs,
                  std::vector<double>& phys) {
  const std::size_t count = static_cast<std::size_t>(n_) * n_;
  if (coeffs.size() != count) throw std::invalid_argument("fft size mismatch");
  const int hc = half_cols();
  Complex* half = half_buffer();
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < hc; ++j) {
      half[static_cast<std::size_t>(i) * hc + j] =
          coeffs[static_cast<std::size_t>(i) * n_ + j];
    }
  }
  c2r();
  phys.resize(count);
  std::memcpy(phys.data(), impl_->rbuf, count * sizeof(double));
}

void Fft::forward(const std::vector<double>& phys,
                  std::vector<Complex>& coeffs) {
  const std::size_t count = static_cast<std::size_t>(n_) * n_;
  if (phys.size() != count) throw std::invalid_argument("fft size mismatch");
  std::memcpy(impl_->rbuf, phys.data(), count * sizeof(double));
  r2c();
  coeffs.resize(count);
  const double scale = 1.0 / static_cast<double>(count);
  const int hc = half_cols();
  const Complex* half = half_buffer();
  for (int i = 0; i < n_; ++i) {
    const int im = (n_ - i) % n_;
    for (int j = 0; j < hc; ++j) {
      const Complex c = half[static_cast<std::size_t>(i) * hc + j] * scale;
      coeffs[static_cast<std::size_t>(i) * n_ + j] = c;
      const int jm = (n_ - j) % n_;
      if (j != jm || i != im) {
        coeffs[static_cast<std::size_t>(im) * n_ + jm] = std::conj(c);
      }
    }
  }
  return;
}

Fft& thread_fft(int n) {
  thread_local std::map<int, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

std::vector<double> to_physical(const SpectralField& f) {
  std::vector<double> phys;
  thread_fft(f.n()).inverse(f.coeffs(), phys);
  return phys;
}

SpectralField from_physical(GridPtr grid, const std::vector<double>& phys) {
  SpectralField f(std::move(grid));
  thread_fft(f.n()).forward(phys, f.coeffs());
  f.zero_mean_mode();
  return f;
}

SpectralField transform_roundtrip(const SpectralField& f) {
  return from_physical(f.grid(), to_physical(f));
}

double physical_l2_quadrature(const SpectralField& f) {
  const auto phys = to_physical(f);
  const double dx = f.grid()->length() / f.n();
  double sum = 0.0;
  for (double v : phys) sum += v * v;
  return sum * dx * dx;
}

double plancherel_l2(const SpectralField& f) {
  const double L = f.grid()->length();
  return L * L * h_norm2(f);
}

}  // namespace nncda
