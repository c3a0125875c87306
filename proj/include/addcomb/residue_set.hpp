#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "addcomb/error.hpp"
#include "addcomb/ntt.hpp"
#include "addcomb/number_theory.hpp"

namespace addcomb {

namespace bits {

inline std::size_t word_count(i64 n) { return static_cast<std::size_t>((n + 63) / 64); }

inline void clear_tail(std::vector<u64>& w, i64 n) {
  if (const int r = static_cast<int>(n % 64); r != 0) w.back() &= (u64{1} << r) - 1;
}

/// dst |= src << s (bits pushed past n are dropped by the caller's tail mask).
inline void shl_or(std::vector<u64>& dst, const std::vector<u64>& src, i64 s) {
  const std::size_t ws = static_cast<std::size_t>(s / 64);
  const int bs = static_cast<int>(s % 64);
  const std::size_t len = dst.size();
  for (std::size_t i = len; i-- > ws;) {
    u64 v = src[i - ws] << bs;
    if (bs != 0 && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  }
}

/// dst |= src >> s.
inline void shr_or(std::vector<u64>& dst, const std::vector<u64>& src, i64 s) {
  const std::size_t ws = static_cast<std::size_t>(s / 64);
  const int bs = static_cast<int>(s % 64);
  const std::size_t len = src.size();
  for (std::size_t i = 0; i + ws < len; ++i) {
    u64 v = src[i + ws] >> bs;
    if (bs != 0 && i + ws + 1 < len) v |= src[i + ws + 1] << (64 - bs);
    dst[i] |= v;
  }
}

/// dst |= src rotated by s inside Z_n: bit i of src lands on bit (i + s) mod n.
inline void rotate_or(std::vector<u64>& dst, const std::vector<u64>& src, i64 s, i64 n) {
  if (s == 0) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
    return;
  }
  shl_or(dst, src, s);
  clear_tail(dst, n);
  shr_or(dst, src, n - s);
}

template <class F>
void for_each_bit(std::span<const u64> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    u64 v = words[w];
    while (v != 0) {
      f(static_cast<i64>(w * 64 + static_cast<std::size_t>(std::countr_zero(v))));
      v &= v - 1;
    }
  }
}

}  // namespace bits

/// Subset of Z_n backed by a membership bitset. Immutable once built.
class ResidueSet {
 public:
  explicit ResidueSet(i64 modulus) : n_(modulus) {
    require(modulus >= 2, ErrorCode::InvalidParams, "modulus must be at least 2");
    words_.assign(bits::word_count(n_), 0);
    prime_ = is_prime(static_cast<u64>(n_));
  }

  /// Elements are reduced mod n; a repeated residue is an error, never silently merged.
  static ResidueSet from_elements(i64 modulus, std::span<const i64> elements) {
    ResidueSet s(modulus);
    for (i64 e : elements) {
      const i64 r = mod_reduce(e, modulus);
      require(!s.contains(r), ErrorCode::ParseError,
              "duplicate residue " + std::to_string(r) + " modulo " + std::to_string(modulus));
      s.set(r);
    }
    s.recount();
    return s;
  }
  static ResidueSet from_elements(i64 modulus, std::initializer_list<i64> elements) {
    return from_elements(modulus, std::span<const i64>(elements.begin(), elements.size()));
  }

  /// Elements reduced mod n with repeats merged; for constructing images, not for parsing.
  static ResidueSet from_residues(i64 modulus, std::span<const i64> elements) {
    ResidueSet s(modulus);
    for (i64 e : elements) s.set(mod_reduce(e, modulus));
    s.recount();
    return s;
  }

  static ResidueSet from_words(i64 modulus, std::vector<u64> words) {
    ResidueSet s(modulus);
    require(words.size() == s.words_.size(), ErrorCode::InvalidParams, "bitset length mismatch");
    s.words_ = std::move(words);
    bits::clear_tail(s.words_, modulus);
    s.recount();
    return s;
  }

  static ResidueSet full(i64 modulus) {
    ResidueSet s(modulus);
    std::fill(s.words_.begin(), s.words_.end(), ~u64{0});
    bits::clear_tail(s.words_, modulus);
    s.recount();
    return s;
  }

  /// {start, start+1, ..., start+length-1} mod n.
  static ResidueSet interval(i64 modulus, i64 start, i64 length) {
    ResidueSet s(modulus);
    for (i64 i = 0; i < std::min(length, modulus); ++i) s.set(mod_reduce(start + i, modulus));
    s.recount();
    return s;
  }

  i64 modulus() const noexcept { return n_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool is_full() const noexcept { return static_cast<i64>(count_) == n_; }
  bool prime_modulus() const noexcept { return prime_; }
  const std::vector<u64>& words() const noexcept { return words_; }

  bool contains(i64 r) const {
    const i64 x = mod_reduce(r, n_);
    return (words_[static_cast<std::size_t>(x / 64)] >> (x % 64)) & 1;
  }

  std::vector<i64> elements() const {
    std::vector<i64> out;
    out.reserve(count_);
    bits::for_each_bit(words_, [&](i64 x) { out.push_back(x); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    bits::for_each_bit(words_, std::forward<F>(f));
  }

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  /// Lexicographic order on the sorted element lists.
  friend bool lex_less(const ResidueSet& a, const ResidueSet& b) {
    const auto x = a.elements();
    const auto y = b.elements();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }

 private:
  void set(i64 x) { words_[static_cast<std::size_t>(x / 64)] |= u64{1} << (x % 64); }
  void recount() {
    count_ = 0;
    for (u64 w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
  }

  i64 n_;
  std::vector<u64> words_;
  std::size_t count_ = 0;
  bool prime_ = false;
};

inline std::string to_literal(const ResidueSet& a) {
  std::string out = "n=" + std::to_string(a.modulus()) + ":{";
  bool first = true;
  a.for_each([&](i64 x) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  });
  return out + "}";
}

inline void require_prime(const ResidueSet& a, const char* op) {
  require(a.prime_modulus(), ErrorCode::PrimeRequired,
          std::string(op) + " requires a prime modulus, got " + std::to_string(a.modulus()));
}

inline void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
  require(a.modulus() == b.modulus(), ErrorCode::InvalidParams, "moduli differ");
}

/// Shift-OR kernel for A + B: for each x in the smaller set, OR in the other rotated by x.
inline ResidueSet sumset_shift_or(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const ResidueSet& outer = a.size() <= b.size() ? a : b;
  const ResidueSet& inner = a.size() <= b.size() ? b : a;
  std::vector<u64> acc(inner.words().size(), 0);
  outer.for_each([&](i64 x) { bits::rotate_or(acc, inner.words(), x, a.modulus()); });
  return ResidueSet::from_words(a.modulus(), std::move(acc));
}

/// Convolution kernel for A + B via a number-theoretic transform, folding the linear
/// convolution back onto Z_n.
inline ResidueSet sumset_ntt(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const i64 n = a.modulus();
  std::vector<u64> fa(static_cast<std::size_t>(n), 0), fb(static_cast<std::size_t>(n), 0);
  a.for_each([&](i64 x) { fa[static_cast<std::size_t>(x)] = 1; });
  b.for_each([&](i64 x) { fb[static_cast<std::size_t>(x)] = 1; });
  const auto conv = ntt::convolve(std::move(fa), std::move(fb));
  std::vector<u64> words(bits::word_count(n), 0);
  for (std::size_t i = 0; i < conv.size(); ++i) {
    if (conv[i] == 0) continue;
    const std::size_t r = i % static_cast<std::size_t>(n);
    words[r / 64] |= u64{1} << (r % 64);
  }
  return ResidueSet::from_words(n, std::move(words));
}

inline constexpr i64 kNttSumsetThreshold = i64{1} << 16;

inline ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require(!a.empty() && !b.empty(), ErrorCode::EmptySet, "sumset of an empty set");
  if (a.modulus() > kNttSumsetThreshold && std::min(a.size(), b.size()) >= 64) return sumset_ntt(a, b);
  return sumset_shift_or(a, b);
}

/// 2A = A + A.
inline ResidueSet sumset(const ResidueSet& a) { return sumset(a, a); }

/// x -> d*x + u. d must be a unit.
inline ResidueSet affine_image(const ResidueSet& a, i64 d, i64 u) {
  const i64 n = a.modulus();
  const i64 dd = mod_reduce(d, n);
  require(std::gcd(dd, n) == 1, ErrorCode::NonUnitDilation,
          std::to_string(d) + " is not a unit modulo " + std::to_string(n));
  std::vector<u64> words(bits::word_count(n), 0);
  a.for_each([&](i64 x) {
    const i64 y = static_cast<i64>((static_cast<__int128>(dd) * x + mod_reduce(u, n)) % n);
    words[static_cast<std::size_t>(y / 64)] |= u64{1} << (y % 64);
  });
  return ResidueSet::from_words(n, std::move(words));
}

inline ResidueSet dilate(const ResidueSet& a, i64 d) { return affine_image(a, d, 0); }
inline ResidueSet translate(const ResidueSet& a, i64 u) { return affine_image(a, 1, u); }
inline ResidueSet negate(const ResidueSet& a) { return affine_image(a, -1, 0); }

inline ResidueSet set_union(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  auto w = a.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] |= b.words()[i];
  return ResidueSet::from_words(a.modulus(), std::move(w));
}

inline ResidueSet set_intersection(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  auto w = a.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= b.words()[i];
  return ResidueSet::from_words(a.modulus(), std::move(w));
}

inline ResidueSet set_difference(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  auto w = a.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~b.words()[i];
  return ResidueSet::from_words(a.modulus(), std::move(w));
}

inline bool is_subset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    if (a.words()[i] & ~b.words()[i]) return false;
  }
  return true;
}

/// Lexicographically smallest affine image d*A + u over all p(p-1) maps.
inline ResidueSet affine_canonical_form(const ResidueSet& a) {
  require_prime(a, "affine_canonical_form");
  const i64 p = a.modulus();
  ResidueSet best = a;
  const auto elems = a.elements();
  std::vector<u64> words(a.words().size());
  for (i64 d = 1; d < p; ++d) {
    for (i64 u = 0; u < p; ++u) {
      std::fill(words.begin(), words.end(), 0);
      for (i64 x : elems) {
        const i64 y = (d * x + u) % p;
        words[static_cast<std::size_t>(y / 64)] |= u64{1} << (y % 64);
      }
      // Both sets have equal cardinality, so the lowest differing bit decides.
      const auto& cur = best.words();
      for (std::size_t i = 0; i < words.size(); ++i) {
        const u64 diff = words[i] ^ cur[i];
        if (diff == 0) continue;
        if (words[i] & diff & (~diff + 1)) best = ResidueSet::from_words(p, words);
        break;
      }
    }
  }
  return best;
}

}  // namespace addcomb
