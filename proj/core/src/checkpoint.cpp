#include "nncda/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nncda {

namespace {

constexpr std::array<char, 7> kMagic = {'N', 'N', 'C', 'D', 'A', '1', '\0'};

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<unsigned char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

void put_f64(std::ostream& os, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<unsigned char, 8> b;
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  os.write(reinterpret_cast<const char*>(b.data()), b.size());
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b;
  is.read(reinterpret_cast<char*>(b.data()), b.size());
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  std::array<unsigned char, 8> b;
  is.read(reinterpret_cast<char*>(b.data()), b.size());
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{b[i]} << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_checkpoint(const std::string& path, const SpectralField& psi,
                      double t) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open checkpoint for write: " + path);
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, static_cast<std::uint32_t>(psi.n()));
  put_f64(os, psi.grid()->length());
  put_f64(os, t);
  for (const Complex& c : psi.coeffs()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
  if (!os) throw std::runtime_error("checkpoint write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open checkpoint: " + path);
  std::array<char, 7> magic;
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) {
    throw std::runtime_error("bad checkpoint magic: " + path);
  }
  const std::uint32_t n = get_u32(is);
  const double L = get_f64(is);
  const double t = get_f64(is);
  Checkpoint cp;
  cp.psi = SpectralField(make_grid(static_cast<int>(n), L));
  cp.t = t;
  for (Complex& c : cp.psi.coeffs()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    c = Complex{re, im};
  }
  if (!is) throw std::runtime_error("truncated checkpoint: " + path);
  return cp;
}

}  // namespace nncda
