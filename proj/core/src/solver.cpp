#include "nncda/solver.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "nncda/fft.hpp"
#include "nncda/ops.hpp"

namespace nncda {

PhysicalParams make_params(double nu, SpectralField curl_f) {
  if (!(nu > 0.0)) throw std::invalid_argument("params: nu must be positive");
  PhysicalParams p;
  p.nu = nu;
  p.grashof = grashof(curl_f, nu);
  p.forcing = std::move(curl_f);
  return p;
}

blowup_error::blowup_error(double t, double h2)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "solution blew up at t = " << t << " (||u||_H^2 = " << h2 << ")";
        return os.str();
      }()),
      t_(t),
      h2_(h2) {}

Stepper::Stepper(GridPtr grid, const PhysicalParams& params)
    : grid_(std::move(grid)), params_(params) {
  const double g2 = params_.grashof * params_.grashof;
  guard_ref_ = 2.0 * g2 * params_.nu * params_.nu;
}

void Stepper::refresh_decay(double dt) {
  const Grid& g = *grid_;
  const int n = g.n();
  const int hc = n / 2 + 1;
  decay_.resize(static_cast<std::size_t>(n) * hc);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < hc; ++j) {
      decay_[static_cast<std::size_t>(i) * hc + j] =
          std::exp(-params_.nu * g.k2(i, j) * dt);
    }
  }
  cached_dt_ = dt;
}

// Fills nl_half_ with the half-spectrum advection tendency -u . grad w,
// unnormalized (carries the raw n^2 factor of the forward transform).
void Stepper::compute_tendency_half(const SpectralField& psi) {
  const Grid& g = *grid_;
  const int n = g.n();
  const int hc = n / 2 + 1;
  Fft& fft = thread_fft(n);
  const std::size_t rcount = static_cast<std::size_t>(n) * n;

  // u = grad_perp(psi): u1 = -i ky psi, u2 = i kx psi.
  Complex* half = fft.half_buffer();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < hc; ++j) {
      const double ky = g.wavenumber(j);
      const Complex c = psi.at(i, j);
      half[static_cast<std::size_t>(i) * hc + j] =
          Complex{ky * c.imag(), -ky * c.real()};
    }
  }
  fft.c2r();
  u1_.assign(fft.real_buffer(), fft.real_buffer() + rcount);
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < hc; ++j) {
      const Complex c = psi.at(i, j);
      half[static_cast<std::size_t>(i) * hc + j] =
          Complex{-kx * c.imag(), kx * c.real()};
    }
  }
  fft.c2r();
  const double* u2 = fft.real_buffer();

  // Basdevant form: u . grad w = dxdy(u2^2 - u1^2) + (dxx - dyy)(u1 u2),
  // so the tendency needs the transforms of the two products only.
  double* rbuf = fft.real_buffer();
  pb_.resize(rcount);
  for (std::size_t m = 0; m < rcount; ++m) {
    const double a = u1_[m];
    const double b = u2[m];
    pb_[m] = a * b;
    u1_[m] = b * b - a * a;  // u1_ now holds u2^2 - u1^2
  }
  std::memcpy(rbuf, u1_.data(), rcount * sizeof(double));
  fft.r2c();
  ha_.assign(half, half + fft.half_size());
  std::memcpy(rbuf, pb_.data(), rcount * sizeof(double));
  fft.r2c();

  nl_half_.resize(fft.half_size());
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < hc; ++j) {
      const double ky = g.wavenumber(j);
      const std::size_t m = static_cast<std::size_t>(i) * hc + j;
      nl_half_[m] = kx * ky * ha_[m] + (kx * kx - ky * ky) * half[m];
    }
  }
}

SpectralField Stepper::nonlinear_tendency(const SpectralField& psi) {
  compute_tendency_half(psi);
  const Grid& g = *grid_;
  const int n = g.n();
  const int hc = n / 2 + 1;
  const double scale = 1.0 / (static_cast<double>(n) * n);
  SpectralField out(psi.grid());
  for (int i = 0; i < n; ++i) {
    const int im = (n - i) % n;
    for (int j = 0; j < hc; ++j) {
      if ((j == 0 || j == n / 2) && i > n / 2) continue;
      if (!g.dealias_keep(i, j) || g.k2(i, j) == 0.0) continue;
      const Complex c = nl_half_[static_cast<std::size_t>(i) * hc + j] * scale;
      out.at(i, j) = c;
      const int jm = (n - j) % n;
      if (j != jm || i != im) out.at(im, jm) = std::conj(c);
    }
  }
  out.zero_mean_mode();
  return out;
}

void Stepper::step(SolverState& state, double dt, const SpectralField* extra) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  if (dt != cached_dt_) refresh_decay(dt);
  const Grid& g = *grid_;
  const int n = g.n();
  const int hc = n / 2 + 1;

  if (!guard_armed_) {
    guard_ref_ = std::max(guard_ref_, v_norm2(state.psi));
    guard_armed_ = true;
  }

  compute_tendency_half(state.psi);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  const bool forced = !params_.forcing.coeffs().empty();

  // Advance each retained vorticity mode and mirror the update back onto
  // the full lattice; everything outside the dealias mask is zeroed.
  double h2 = 0.0;
  auto& c = state.psi.coeffs();
  for (int i = 0; i < n; ++i) {
    const int im = (n - i) % n;
    for (int j = 0; j < hc; ++j) {
      const bool edge_col = (j == 0 || j == n / 2);
      if (edge_col && i > n / 2) continue;  // conjugate of a processed row
      const std::size_t mf = static_cast<std::size_t>(i) * n + j;
      const int jm = (n - j) % n;
      const std::size_t mm = static_cast<std::size_t>(im) * n + jm;
      const double k2 = g.k2(i, j);
      if (k2 == 0.0 || !g.dealias_keep(i, j)) {
        c[mf] = Complex{0.0, 0.0};
        c[mm] = Complex{0.0, 0.0};
        continue;
      }
      const std::size_t mh = static_cast<std::size_t>(i) * hc + j;
      Complex rhs = nl_half_[mh] * inv_n2;
      if (forced) rhs += params_.forcing.coeffs()[mf];
      if (extra) rhs += extra->coeffs()[mf];
      Complex omega = -k2 * c[mf];
      omega = decay_[mh] * (omega + dt * rhs);
      const Complex next = -omega / k2;
      c[mf] = next;
      if (mf != mm) c[mm] = std::conj(next);
      const double weight = (edge_col && (i == 0 || i == n / 2)) ? 1.0 : 2.0;
      h2 += weight * k2 * std::norm(next);
    }
  }
  state.t += dt;
  if (!std::isfinite(h2) || (guard_ref_ > 0.0 && h2 > 1e8 * guard_ref_)) {
    throw blowup_error(state.t, h2);
  }
}

SolverState step_if_euler(const SolverState& state,
                          const PhysicalParams& params, double dt,
                          const SpectralField* extra) {
  Stepper stepper(state.psi.grid(), params);
  SolverState out = state;
  stepper.step(out, dt, extra);
  return out;
}

SpectralField nonlinear_tendency(const SpectralField& psi) {
  PhysicalParams dummy;
  dummy.nu = 1.0;
  Stepper stepper(psi.grid(), dummy);
  return stepper.nonlinear_tendency(psi);
}

SpinupResult spinup(GridPtr grid, const PhysicalParams& params, double dt,
                    double t_end, int sample_every) {
  if (sample_every < 1) {
    throw std::invalid_argument("spinup: sample_every must be >= 1");
  }
  SpinupResult r;
  r.state.psi = SpectralField(grid);
  r.state.t = 0.0;
  Stepper stepper(std::move(grid), params);

  auto sample = [&] {
    r.series.t.push_back(r.state.t);
    r.series.energy.push_back(0.5 * v_norm2(r.state.psi));
    r.series.enstrophy.push_back(0.5 * a_norm2(r.state.psi));
  };
  sample();
  const long steps = std::lround(t_end / dt);
  for (long s = 1; s <= steps; ++s) {
    stepper.step(r.state, dt, nullptr);
    if (s % sample_every == 0 || s == steps) sample();
  }
  return r;
}

double windowed_drift(const std::vector<double>& t,
                      const std::vector<double>& values, double window) {
  if (t.size() != values.size() || t.size() < 2) {
    throw std::invalid_argument("windowed_drift: need a sampled series");
  }
  const double t_end = t.back();
  if (t_end < 2.0 * window) {
    throw std::invalid_argument("windowed_drift: series shorter than 2 windows");
  }
  double sum_prev = 0.0, sum_last = 0.0;
  std::size_t n_prev = 0, n_last = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > t_end - window) {
      sum_last += values[i];
      ++n_last;
    } else if (t[i] > t_end - 2.0 * window) {
      sum_prev += values[i];
      ++n_prev;
    }
  }
  const double mean_prev = sum_prev / static_cast<double>(n_prev);
  const double mean_last = sum_last / static_cast<double>(n_last);
  return std::abs(mean_last - mean_prev) /
         std::max(std::abs(mean_prev), 1e-300);
}

}  // namespace nncda
