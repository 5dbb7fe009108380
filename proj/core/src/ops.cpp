#include "nncda/ops.hpp"

namespace nncda {

VelocityField grad_perp(const SpectralField& psi) {
  const Grid& g = *psi.grid();
  const int n = g.n();
  VelocityField u(psi.grid());
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      const Complex c = psi.at(i, j);
      const Complex ic{-c.imag(), c.real()};  // i * c
      u.x.at(i, j) = -ky * ic;
      u.y.at(i, j) = kx * ic;
    }
  }
  return u;
}

SpectralField curl(const VelocityField& u) {
  const Grid& g = *u.grid();
  const int n = g.n();
  SpectralField w(u.grid());
  for (int i = 0; i < n; ++i) {
    const double kx = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double ky = g.wavenumber(j);
      const Complex cy = u.y.at(i, j);
      const Complex cx = u.x.at(i, j);
      w.at(i, j) = Complex{-kx * cy.imag() + ky * cx.imag(),
                           kx * cy.real() - ky * cx.real()};
    }
  }
  w.zero_mean_mode();
  return w;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  SpectralField out(f.grid());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.at(i, j) = -g.k2(i, j) * f.at(i, j);
    }
  }
  return out;
}

SpectralField inv_laplacian(const SpectralField& f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  SpectralField out(f.grid());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double k2 = g.k2(i, j);
      out.at(i, j) = (k2 > 0.0) ? -f.at(i, j) / k2 : Complex{0.0, 0.0};
    }
  }
  return out;
}

void dealias_in_place(SpectralField& f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!g.dealias_keep(i, j)) f.at(i, j) = Complex{0.0, 0.0};
    }
  }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_in_place(out);
  return out;
}

SpectralField project_index_shell(const SpectralField& f, int m,
                                  bool keep_low) {
  const Grid& g = *f.grid();
  const int n = g.n();
  const long m2 = static_cast<long>(m) * m;
  SpectralField out(f.grid());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool low = g.index_mag2(i, j) <= m2;
      if (low == keep_low) out.at(i, j) = f.at(i, j);
    }
  }
  out.zero_mean_mode();
  return out;
}

}  // namespace nncda
