#pragma once

#include <string>

#include "nncda/field.hpp"

namespace nncda {

/// Stream-function checkpoint, bit-exact across platforms.
///
/// Layout: magic bytes "NNCDA1\0", then little-endian u32 n, f64 L,
/// f64 t, then n*n psi coefficients as (f64 real, f64 imag) pairs in
/// row-major k-index order.
struct Checkpoint {
  SpectralField psi;
  double t = 0.0;
};

void write_checkpoint(const std::string& path, const SpectralField& psi,
                      double t);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace nncda
