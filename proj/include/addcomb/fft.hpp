#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace addcomb::fft {

using cplx = std::complex<double>;

/// In-place radix-2 transform, sign +1 computes sum x_n e^{+2 pi i nk/N}.
inline void radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<cplx> roots;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    roots.resize(half);
    for (std::size_t j = 0; j < half; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(len);
      roots[j] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + half] * roots[j];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }
}

/// DFT of arbitrary length via Bluestein's chirp-z reduction to a power-of-two
/// convolution: X_k = sum_n x_n e^{+2 pi i nk/N}.
inline std::vector<cplx> dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N keeps the angle argument small.
    const auto sq = static_cast<unsigned long long>(k) * k % (2ull * n);
    const double ang = std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<cplx> a(m, 0.0), b(m, 0.0);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);
  radix2(a, -1);
  radix2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  radix2(a, +1);
  std::vector<cplx> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace addcomb::fft
