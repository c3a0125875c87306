#pragma once

#include <string>
#include <vector>

#include "addcomb/error.hpp"
#include "addcomb/number_theory.hpp"

namespace addcomb {

/// Arithmetic progression {start + i*step : 0 <= i < length}, in Z (modulus == 0) or Z_n.
struct ApDescriptor {
  i64 start = 0;
  i64 step = 1;
  i64 length = 1;
  i64 modulus = 0;

  bool in_integers() const noexcept { return modulus == 0; }

  i64 at(i64 i) const {
    return in_integers() ? start + i * step
                         : static_cast<i64>((static_cast<__int128>(step) * i + start) % modulus);
  }

  std::vector<i64> elements() const {
    std::vector<i64> out;
    out.reserve(static_cast<std::size_t>(length));
    for (i64 i = 0; i < length; ++i) out.push_back(at(i));
    return out;
  }

  bool contains(i64 x) const {
    if (in_integers()) {
      if (step == 0) return x == start;
      const i64 off = x - start;
      return off % step == 0 && off / step >= 0 && off / step < length;
    }
    const i64 r = mod_reduce(x, modulus);
    for (i64 i = 0; i < length; ++i) {
      if (at(i) == r) return true;
    }
    return false;
  }

  /// In Z_n, rewrite with step <= n/2 by reversing the progression.
  ApDescriptor normalized() const {
    if (in_integers() || step <= modulus / 2) return *this;
    ApDescriptor r = *this;
    r.start = at(length - 1);
    r.step = modulus - step;
    return r;
  }

  friend bool operator==(const ApDescriptor&, const ApDescriptor&) = default;
};

inline std::string to_string(const ApDescriptor& ap) {
  return "start=" + std::to_string(ap.start) + " step=" + std::to_string(ap.step) +
         " length=" + std::to_string(ap.length);
}

}  // namespace addcomb
