#pragma once

#include <cstdint>
#include <random>

#include "nncda/field.hpp"

namespace nncda {

/// Seedable normal-variate source with a pinned algorithm.
///
/// std::normal_distribution is implementation-defined, so this uses
/// mt19937_64 (fully specified by the standard) plus Box-Muller on
/// uniforms built as (x >> 11) * 2^-53.  Identical seeds therefore give
/// identical streams on every platform.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random mean-free field with coefficients ~ N(0,1) / (1 + |k|)^decay on
/// the dealiased lattice, reality condition enforced by conjugation.
SpectralField random_field(GridPtr grid, std::uint64_t seed,
                           double decay = 1.0);

/// Random divergence-free velocity (grad_perp of a random stream function).
VelocityField random_velocity(GridPtr grid, std::uint64_t seed,
                              double decay = 1.0);

}  // namespace nncda
