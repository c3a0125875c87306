#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/ap.hpp"
#include "addcomb/error.hpp"
#include "addcomb/residue_set.hpp"

namespace addcomb {

struct ApCover {
  i64 length = 0;
  ApDescriptor witness;
};

/// Minimal AP covering in Z_m for any modulus m >= 2.
///
/// A progression with step s lives inside one coset of the subgroup generated by
/// gcd(s, m); inside that coset the elements are re-indexed along the s-walk and the
/// complement of the longest cyclic run of absent positions is the shortest cover for
/// that step. Steps s and m - s give the same progressions reversed, so only
/// s <= m/2 is swept. Ties go to the smallest step, then the smallest start.
inline ApCover min_ap_cover_cyclic(const ResidueSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "cover of an empty set");
  const i64 m = a.modulus();
  if (a.is_full()) return {m, ApDescriptor{0, 1, m, m}};

  const auto elems = a.elements();
  std::optional<ApCover> best;
  std::vector<u64> pos_words;
  std::vector<i64> pos;
  for (i64 s = 1; s <= std::max<i64>(1, m / 2); ++s) {
    const i64 g = std::gcd(s, m);
    const i64 orbit = m / g;
    if (best && best->length <= 1) break;
    const i64 c = elems[0] % g;
    bool one_coset = true;
    for (i64 x : elems) one_coset = one_coset && (x % g == c);
    if (!one_coset) continue;
    if (static_cast<i64>(elems.size()) > orbit) continue;

    const i64 step_inv = orbit == 1 ? 0 : mod_inverse(s / g, orbit);
    pos_words.assign(bits::word_count(orbit), 0);
    for (i64 x : elems) {
      const i64 t = static_cast<i64>(static_cast<__int128>((x - c) / g) * step_inv % orbit);
      pos_words[static_cast<std::size_t>(t / 64)] |= u64{1} << (t % 64);
    }
    pos.clear();
    bits::for_each_bit(pos_words, [&](i64 t) { pos.push_back(t); });
    const std::size_t k = pos.size();

    i64 length = 0;
    i64 start = 0;
    if (static_cast<i64>(k) == orbit) {
      length = orbit;
      start = c;
    } else {
      i64 max_gap = -1;
      for (std::size_t i = 0; i < k; ++i) {
        const i64 next = i + 1 < k ? pos[i + 1] : pos[0] + orbit;
        const i64 gap = next - pos[i] - 1;
        const i64 first = mod_reduce(next, orbit);
        const i64 cand = static_cast<i64>((static_cast<__int128>(first) * s + c) % m);
        if (gap > max_gap) {
          max_gap = gap;
          start = cand;
        } else if (gap == max_gap) {
          start = std::min(start, cand);
        }
      }
      length = orbit - max_gap;
    }
    if (!best || length < best->length) best = ApCover{length, ApDescriptor{start, s, length, m}};
  }
  return *best;
}

/// l(A) together with the bound |2A| - |A| + 1 that the covering theorems target.
struct CoverResult {
  i64 length = 0;
  ApDescriptor witness;
  i64 bound = 0;
  bool within_bound = false;
};

inline CoverResult make_cover_result(const ResidueSet& a, const ApCover& cover) {
  const i64 doubling = static_cast<i64>(sumset(a).size());
  CoverResult r;
  r.length = cover.length;
  r.witness = cover.witness;
  r.bound = doubling - static_cast<i64>(a.size()) + 1;
  r.within_bound = r.length <= r.bound;
  return r;
}

inline CoverResult min_ap_cover(const ResidueSet& a) {
  require_prime(a, "min_ap_cover");
  require(!a.empty(), ErrorCode::EmptySet, "cover of an empty set");
  return make_cover_result(a, min_ap_cover_cyclic(a));
}

/// True iff every element of a lies on the progression.
inline bool ap_covers(const ApDescriptor& ap, const ResidueSet& a) {
  if (ap.modulus != a.modulus()) return false;
  std::vector<u64> seen(a.words().size(), 0);
  for (i64 i = 0; i < ap.length; ++i) {
    const i64 y = ap.at(i);
    const std::size_t w = static_cast<std::size_t>(y / 64);
    const u64 bit = u64{1} << (y % 64);
    if (seen[w] & bit) return false;  // repeated element: not a progression of that length
    seen[w] |= bit;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (a.words()[i] & ~seen[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Verdicts

struct MainTheoremReport {
  std::size_t size = 0;
  std::size_t doubling = 0;
  bool doubling_hypothesis = false;  // |2A| <= 2.48|A| - 7
  bool density_hypothesis = false;   // |A| < p / 10^10
  CoverResult cover;
  bool conclusion_holds = false;
};

inline MainTheoremReport main_theorem_verdict(const ResidueSet& a) {
  require_prime(a, "main_theorem_verdict");
  MainTheoremReport r;
  r.size = a.size();
  r.doubling = sumset(a).size();
  const i64 k = static_cast<i64>(r.size);
  r.doubling_hypothesis = 100 * static_cast<i64>(r.doubling) <= 248 * k - 700;
  r.density_hypothesis = static_cast<__int128>(k) * 10'000'000'000LL < a.modulus();
  r.cover = min_ap_cover(a);
  r.conclusion_holds = r.cover.within_bound;
  return r;
}

struct VosperReport {
  std::size_t size = 0;
  std::size_t doubling = 0;
  bool critical = false;  // |2A| = 2|A| - 1
  bool is_ap = false;     // l(A) = |A|
  bool agree = false;
};

inline VosperReport vosper_verdict(const ResidueSet& a) {
  require_prime(a, "vosper_verdict");
  require(a.size() >= 2, ErrorCode::PreconditionFailed, "Vosper needs |A| >= 2");
  VosperReport r;
  r.size = a.size();
  r.doubling = sumset(a).size();
  require(static_cast<i64>(r.doubling) <= a.modulus() - 2, ErrorCode::PreconditionFailed,
          "Vosper needs |2A| <= p - 2, got |2A| = " + std::to_string(r.doubling));
  r.critical = r.doubling == 2 * r.size - 1;
  r.is_ap = min_ap_cover_cyclic(a).length == static_cast<i64>(r.size);
  r.agree = r.critical == r.is_ap;
  require(r.agree, ErrorCode::InternalConsistency, "Vosper equivalence violated by " + to_literal(a));
  return r;
}

enum class ConjectureStatus { Consistent, Counterexample, Silent };

constexpr std::string_view to_string(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::Consistent: return "CONSISTENT";
    case ConjectureStatus::Counterexample: return "COUNTEREXAMPLE";
    case ConjectureStatus::Silent: return "SILENT";
  }
  return "?";
}

struct ConjectureReport {
  std::size_t size = 0;
  std::size_t doubling = 0;
  i64 excess = 0;  // x = |2A| - (2|A| - 1)
  bool condition_i = false;
  bool condition_ii = false;
  CoverResult cover;
  ConjectureStatus status = ConjectureStatus::Silent;
};

/// Evaluates the combined covering conjecture: if (i) or (ii) holds the set must be
/// covered by an AP of length |2A| - |A| + 1. A failure is reported, never thrown.
inline ConjectureReport conjecture_verdict(const ResidueSet& a) {
  require_prime(a, "conjecture_verdict");
  require(!a.empty(), ErrorCode::EmptySet, "conjecture verdict of an empty set");
  ConjectureReport r;
  r.size = a.size();
  r.doubling = sumset(a).size();
  const i64 k = static_cast<i64>(r.size);
  const i64 s = static_cast<i64>(r.doubling);
  const i64 p = a.modulus();
  r.excess = s - (2 * k - 1);
  r.condition_i = 0 <= r.excess && r.excess <= std::min(k - 4, p - s - 2);
  r.condition_ii = 0 <= r.excess && r.excess == k - 3 && k - 3 <= p - s - 3;
  r.cover = min_ap_cover(a);
  if (!r.condition_i && !r.condition_ii) {
    r.status = ConjectureStatus::Silent;
  } else {
    r.status = r.cover.within_bound ? ConjectureStatus::Consistent : ConjectureStatus::Counterexample;
  }
  return r;
}

}  // namespace addcomb
