#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "addcomb/error.hpp"

namespace addcomb {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Least nonnegative residue of v modulo n (n > 0).
constexpr i64 mod_reduce(i64 v, i64 n) {
  i64 r = v % n;
  return r < 0 ? r + n : r;
}

constexpr u64 mul_mod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Inverse of a modulo n; throws NonUnitDilation when gcd(a, n) != 1.
inline i64 mod_inverse(i64 a, i64 n) {
  i64 old_r = mod_reduce(a, n), r = n;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  require(old_r == 1 || n == 1, ErrorCode::NonUnitDilation,
          std::to_string(a) + " is not a unit modulo " + std::to_string(n));
  return mod_reduce(old_s, n);
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline std::vector<i64> primes_up_to(i64 limit) {
  std::vector<i64> out;
  if (limit < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(limit) + 1, true);
  for (i64 i = 2; i <= limit; ++i) {
    if (!sieve[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= limit; j += i) sieve[static_cast<std::size_t>(j)] = false;
  }
  return out;
}

constexpr i64 ceil_div(i64 a, i64 b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace addcomb
