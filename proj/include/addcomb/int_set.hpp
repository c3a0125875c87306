#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "addcomb/ap.hpp"
#include "addcomb/error.hpp"
#include "addcomb/number_theory.hpp"

namespace addcomb {

/// Finite set of integers kept strictly increasing.
class IntSet {
 public:
  IntSet() = default;

  /// Duplicates are rejected.
  static IntSet from_elements(std::span<const i64> elements) {
    IntSet s;
    s.elems_.assign(elements.begin(), elements.end());
    std::sort(s.elems_.begin(), s.elems_.end());
    require(std::adjacent_find(s.elems_.begin(), s.elems_.end()) == s.elems_.end(),
            ErrorCode::ParseError, "duplicate element in integer set");
    return s;
  }
  static IntSet from_elements(std::initializer_list<i64> elements) {
    return from_elements(std::span<const i64>(elements.begin(), elements.size()));
  }
  /// Sorts and merges repeats.
  static IntSet from_values(std::vector<i64> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    IntSet s;
    s.elems_ = std::move(values);
    return s;
  }

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const std::vector<i64>& elements() const noexcept { return elems_; }
  i64 min() const { return elems_.front(); }
  i64 max() const { return elems_.back(); }
  bool contains(i64 x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  friend bool operator==(const IntSet&, const IntSet&) = default;

 private:
  std::vector<i64> elems_;
};

inline std::string to_literal(const IntSet& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.elements()[i]);
  }
  return out + "}";
}

/// gcd of the differences from the minimum; 0 for a singleton.
inline i64 difference_gcd(const IntSet& a) {
  i64 g = 0;
  for (i64 x : a) g = std::gcd(g, x - a.min());
  return g;
}

/// Affine normalization x -> (x - shift) / scale recorded so it can be inverted.
struct NormalForm {
  IntSet set;
  i64 shift = 0;
  i64 scale = 1;
};

inline NormalForm normal_form_with_map(const IntSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "normal form of an empty set");
  NormalForm nf;
  nf.shift = a.min();
  const i64 g = difference_gcd(a);
  nf.scale = g == 0 ? 1 : g;
  std::vector<i64> v;
  v.reserve(a.size());
  for (i64 x : a) v.push_back((x - nf.shift) / nf.scale);
  nf.set = IntSet::from_values(std::move(v));
  return nf;
}

inline IntSet normal_form(const IntSet& a) { return normal_form_with_map(a).set; }

inline bool is_normal_form(const IntSet& a) {
  return !a.empty() && a.min() == 0 && (a.size() == 1 || difference_gcd(a) == 1);
}

inline IntSet int_sumset(const IntSet& a, const IntSet& b) {
  require(!a.empty() && !b.empty(), ErrorCode::EmptySet, "sumset of an empty set");
  const i64 lo = a.min() + b.min();
  const i64 span = a.max() + b.max() - lo + 1;
  std::vector<i64> out;
  if (span <= (i64{1} << 26)) {
    std::vector<bool> hit(static_cast<std::size_t>(span), false);
    for (i64 x : a)
      for (i64 y : b) hit[static_cast<std::size_t>(x + y - lo)] = true;
    for (i64 i = 0; i < span; ++i)
      if (hit[static_cast<std::size_t>(i)]) out.push_back(lo + i);
    return IntSet::from_values(std::move(out));
  }
  out.reserve(a.size() * b.size());
  for (i64 x : a)
    for (i64 y : b) out.push_back(x + y);
  return IntSet::from_values(std::move(out));
}

inline IntSet int_sumset(const IntSet& a) { return int_sumset(a, a); }

/// Shortest integer AP containing a: (max - min)/gcd + 1.
inline i64 min_interval_cover(const IntSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "cover of an empty set");
  const i64 g = difference_gcd(a);
  return g == 0 ? 1 : (a.max() - a.min()) / g + 1;
}

inline ApDescriptor min_interval_cover_ap(const IntSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "cover of an empty set");
  const i64 g = difference_gcd(a);
  return ApDescriptor{a.min(), g == 0 ? 1 : g, min_interval_cover(a), 0};
}

/// Freiman's 3k-4 covering: under |2A| <= 3|A| - 4 the set lies in an AP of length
/// at most |2A| - |A| + 1. Returns the step-gcd hull mapped back from the normal form.
inline ApDescriptor cover_3k4(const IntSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "cover of an empty set");
  const i64 k = static_cast<i64>(a.size());
  const i64 doubling = static_cast<i64>(int_sumset(a).size());
  require(doubling <= 3 * k - 4, ErrorCode::HypothesisNotMet,
          "|2A| = " + std::to_string(doubling) + " exceeds 3|A| - 4 = " + std::to_string(3 * k - 4));
  const NormalForm nf = normal_form_with_map(a);
  const ApDescriptor ap{nf.shift, nf.scale, nf.set.max() + 1, 0};
  require(ap.length <= doubling - k + 1, ErrorCode::InternalConsistency,
          "3k-4 covering violated for " + to_literal(a));
  return ap;
}

}  // namespace addcomb
