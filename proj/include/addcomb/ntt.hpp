#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "addcomb/number_theory.hpp"

namespace addcomb::ntt {

// 998244353 = 119 * 2^23 + 1, primitive root 3.
inline constexpr u64 kModulus = 998244353;
inline constexpr u64 kRoot = 3;
inline constexpr std::size_t kMaxLength = std::size_t{1} << 23;

inline void transform(std::vector<u64>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = pow_mod(kRoot, (kModulus - 1) / len, kModulus);
    if (inverse) w = pow_mod(w, kModulus - 2, kModulus);
    for (std::size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const u64 u = a[i + j];
        const u64 v = a[i + j + len / 2] * wn % kModulus;
        a[i + j] = u + v < kModulus ? u + v : u + v - kModulus;
        a[i + j + len / 2] = u >= v ? u - v : u + kModulus - v;
        wn = wn * w % kModulus;
      }
    }
  }
  if (inverse) {
    const u64 inv_n = pow_mod(n, kModulus - 2, kModulus);
    for (auto& x : a) x = x * inv_n % kModulus;
  }
}

/// Linear convolution of nonnegative integer sequences whose true coefficients are below kModulus.
inline std::vector<u64> convolve(std::vector<u64> a, std::vector<u64> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  require(n <= kMaxLength, ErrorCode::RangeError, "convolution length exceeds NTT capacity");
  a.resize(n, 0);
  b.resize(n, 0);
  transform(a, false);
  transform(b, false);
  for (std::size_t i = 0; i < n; ++i) a[i] = a[i] * b[i] % kModulus;
  transform(a, true);
  a.resize(out_len);
  return a;
}

}  // namespace addcomb::ntt
