#pragma once

#include <cstdint>

#include "nncda/field.hpp"

namespace nncda {

/// H norm of the velocity-level forcing f recovered from its curl.
/// With g = curl f and f divergence-free, |f_hat(k)| = |g_hat(k)| / |kappa|.
double forcing_velocity_norm(const SpectralField& curl_f);

/// Grashof number G = ||f||_H / (lambda1 nu^2) for time-independent forcing.
double grashof(const SpectralField& curl_f, double nu);

/// Deterministic random forcing, stored as the curl of f.
///
/// Modes with k_min^2 <= k1^2 + k2^2 <= k_max^2 (integer index units) get
/// normally distributed real and imaginary parts on half of the lattice;
/// the other half follows from the reality condition f(-k) = conj(f(k)).
/// The field is then rescaled so the induced Grashof number equals
/// target_G exactly.
SpectralField make_forcing(GridPtr grid, std::uint64_t seed, int k_min,
                           int k_max, double target_G, double nu);

}  // namespace nncda
