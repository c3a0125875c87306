#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/covering.hpp"
#include "addcomb/freiman.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/residue_set.hpp"
#include "addcomb/spectral.hpp"

namespace addcomb {

enum class EngineBranch { WholeSetRectifiable, Case1, Case2i, Case2ii, Case2iii, Fallback, Diagnostic };

constexpr std::string_view to_string(EngineBranch b) {
  switch (b) {
    case EngineBranch::WholeSetRectifiable: return "WholeSetRectifiable";
    case EngineBranch::Case1: return "Case1";
    case EngineBranch::Case2i: return "Case2-i";
    case EngineBranch::Case2ii: return "Case2-ii";
    case EngineBranch::Case2iii: return "Case2-iii";
    case EngineBranch::Fallback: return "Fallback";
    case EngineBranch::Diagnostic: return "Diagnostic";
  }
  return "?";
}

/// A constant from the asymptotic argument next to the value measured on this input.
struct EngineAnnotation {
  std::string name;
  std::string asymptotic;
  std::string measured;
  bool holds = false;
};

/// Case 2 partition in normalized coordinates z = scale*x + shift (mod p):
/// a1_prime in S' = [0, w1), a1_second in S'' = [c, c + w2), rest = A \ A1.
struct EngineParts {
  i64 scale = 1;
  i64 shift = 0;
  i64 width_prime = 0;
  i64 width_second = 0;
  ResidueSet a1_prime{2};
  ResidueSet a1_second{2};
  ResidueSet rest{2};
};

struct EngineTrace {
  i64 modulus = 0;
  i64 size = 0;
  i64 doubling = 0;
  i64 bound = 0;  // |2A| - |A| + 1
  RectWindow window;
  double fourier_guarantee = 0.0;  // (|A| + max_d |F(d)|)/2
  bool fourier_guarantee_holds = false;
  std::optional<bool> a1_doubling_ok;
  std::optional<i64> dim_a1;
  EngineBranch branch = EngineBranch::Fallback;
  std::optional<EngineBranch> attempted;  // the proof branch tried before falling back
  std::optional<i64> c;
  std::optional<EngineParts> parts;
  i64 dilation_used = 1;
  std::optional<CoverResult> result;
  std::string message;
  std::vector<EngineAnnotation> annotations;
  bool reverified = false;
};

struct EngineOptions {
  WindowMode window_mode = WindowMode::Auto;
};

namespace detail {

/// If dilation e puts all of A inside one half window, lift it to Z and cover it by the
/// integer 3k-4 theorem; the progression is mapped back to Z_p.
inline std::optional<CoverResult> cover_after_dilation(const ResidueSet& a, i64 e, std::string& why) {
  const i64 p = a.modulus();
  const i64 w = half_window_size(p);
  std::vector<u64> scratch;
  const auto sorted = dilated_sorted(a, e, scratch);
  const WindowCount wc = best_window_start(sorted, p, w);
  if (wc.count != static_cast<i64>(a.size())) {
    why = "dilation by " + std::to_string(e) + " leaves " + std::to_string(static_cast<i64>(a.size()) - wc.count) +
          " elements outside every half window";
    return std::nullopt;
  }
  std::vector<i64> lifted;
  for (i64 y : sorted) lifted.push_back(mod_reduce(y - wc.u, p));
  const IntSet lift = IntSet::from_values(lifted);
  const i64 k = static_cast<i64>(lift.size());
  const i64 s = static_cast<i64>(int_sumset(lift).size());
  if (s > 3 * k - 4) {
    why = "rectified set has |2A| = " + std::to_string(s) + " > 3|A| - 4 = " + std::to_string(3 * k - 4);
    return std::nullopt;
  }
  const ApDescriptor z = cover_3k4(lift);
  const i64 e_inv = mod_inverse(e, p);
  ApDescriptor back{mod_reduce(static_cast<i64>(static_cast<__int128>(e_inv) * mod_reduce(z.start + wc.u, p) % p), p),
                    static_cast<i64>(static_cast<__int128>(e_inv) * mod_reduce(z.step, p) % p), z.length, p};
  ApCover cover{z.length, back.normalized()};
  return make_cover_result(a, cover);
}

inline void annotate(EngineTrace& t, std::string name, std::string asymptotic, std::string measured, bool holds) {
  t.annotations.push_back({std::move(name), std::move(asymptotic), std::move(measured), holds});
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline IntSet lift_window(const RectWindow& win) {
  std::vector<i64> v;
  win.captured.for_each([&](i64 y) { v.push_back(mod_reduce(y - win.u, win.captured.modulus())); });
  return IntSet::from_values(v);
}

inline void fallback(const ResidueSet& a, EngineTrace& t, std::optional<EngineBranch> attempted, std::string why) {
  t.attempted = attempted;
  t.branch = EngineBranch::Fallback;
  t.dilation_used = 1;
  const CoverResult cr = min_ap_cover(a);
  if (cr.within_bound) {
    t.result = cr;
    t.message = why;
  } else {
    t.result.reset();
    t.message = why + "; shortest covering progression has length " + std::to_string(cr.length) + " > bound " +
                std::to_string(cr.bound);
  }
}

}  // namespace detail

/// Replays the rectification argument on a concrete set: half-window rectification, the
/// dimension dichotomy for the rectified part, the two-lines geometry, and dilation by 2
/// or 3, ending in the integer 3k-4 cover. Branches whose concrete preconditions fail fall
/// back to the exact minimal cover. Every returned cover is re-verified.
inline EngineTrace prove_cover(const ResidueSet& a, const EngineOptions& opt = {}) {
  require_prime(a, "prove_cover");
  require(a.size() >= 3, ErrorCode::PreconditionFailed, "prove_cover needs |A| >= 3");
  const i64 p = a.modulus();
  EngineTrace t;
  t.modulus = p;
  t.size = static_cast<i64>(a.size());
  t.doubling = static_cast<i64>(sumset(a).size());
  t.bound = t.doubling - t.size + 1;
  {
    const bool main_hyp = 100 * t.doubling <= 248 * t.size - 700;
    detail::annotate(t, "main_doubling", "|2A| <= 2.48|A| - 7", std::to_string(t.doubling) + " vs " +
                     detail::fmt(2.48 * static_cast<double>(t.size) - 7.0), main_hyp);
    detail::annotate(t, "main_density", "|A| < p/10^10", std::to_string(t.size) + " vs " + std::to_string(p), false);
  }

  t.window = best_half_window(a, opt.window_mode);
  const i64 k1 = static_cast<i64>(t.window.captured.size());
  {
    const auto lc = largest_coefficient(a);
    t.fourier_guarantee = (static_cast<double>(t.size) + lc.magnitude) / 2.0;
    t.fourier_guarantee_holds = static_cast<double>(k1) >= t.fourier_guarantee - kMagnitudeTolerance;
    const double frac = static_cast<double>(k1) / static_cast<double>(t.size);
    detail::annotate(t, "a1_fraction", "|A1| > 0.8175|A|", detail::fmt(frac), frac > 0.8175);
  }

  std::string why;
  // Finish a branch: re-verify its cover or fall back.
  auto finish = [&](EngineBranch branch, const CoverResult& cr, i64 dilation) {
    const bool ok = ap_covers(cr.witness, a) && cr.length <= t.bound && cr.witness.length == cr.length;
    if (!ok) {
      detail::fallback(a, t, branch, "certified cover failed re-verification");
      return;
    }
    t.branch = branch;
    t.result = cr;
    t.dilation_used = dilation;
  };

  if (k1 == t.size) {
    if (auto cr = detail::cover_after_dilation(a, t.window.d, why)) {
      finish(EngineBranch::WholeSetRectifiable, *cr, 1);
    } else {
      detail::fallback(a, t, EngineBranch::WholeSetRectifiable, why);
    }
    t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
    return t;
  }

  const IntSet a1 = detail::lift_window(t.window);
  const i64 s1 = static_cast<i64>(int_sumset(a1).size());
  t.a1_doubling_ok = 100 * s1 <= 304 * k1 - 700;
  if (!*t.a1_doubling_ok) {
    detail::fallback(a, t, std::nullopt,
                     "|2A1| = " + std::to_string(s1) + " exceeds 3.04|A1| - 7 = " +
                         detail::fmt(3.04 * static_cast<double>(k1) - 7.0));
    t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
    return t;
  }

  const i64 dim = additive_dimension(a1).dim;
  t.dim_a1 = dim;
  if (dim >= 3) {
    t.branch = EngineBranch::Diagnostic;
    t.message = "dim(A1) = " + std::to_string(dim) + " contradicts |2A1| <= 3.04|A1| - 7 via the dimension bound";
    t.reverified = true;
    return t;
  }

  if (dim == 1) {
    const i64 r = difference_gcd(a1);
    const i64 e = static_cast<i64>(static_cast<__int128>(t.window.d) * mod_inverse(mod_reduce(r, p), p) % p);
    std::optional<CoverResult> cr;
    i64 used = 1;
    for (i64 factor : {1, 2}) {
      used = factor;
      cr = detail::cover_after_dilation(a, mod_reduce(factor * e, p), why);
      if (cr) break;
    }
    if (cr) {
      finish(EngineBranch::Case1, *cr, used);
    } else {
      detail::fallback(a, t, EngineBranch::Case1, why);
    }
    t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
    return t;
  }

  // dim == 2
  TwoLinesCover tl;
  try {
    tl = two_lines_cover(a1);
  } catch (const Error& err) {
    detail::fallback(a, t, EngineBranch::Case2ii, std::string("two-lines structure unavailable: ") + err.what());
    t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
    return t;
  }
  // y = d x - u lands A1 in [0, w); z = r^{-1}(y - P1.start).
  const i64 r_inv = mod_inverse(mod_reduce(tl.p1.step, p), p);
  i64 scale = static_cast<i64>(static_cast<__int128>(t.window.d) * r_inv % p);
  i64 shift = mod_reduce(-static_cast<i64>(static_cast<__int128>(r_inv) * mod_reduce(t.window.u + tl.p1.start, p) % p), p);
  i64 w1 = tl.p1.length;
  i64 w2 = tl.p2.length;
  i64 c = mod_reduce(static_cast<i64>(static_cast<__int128>(r_inv) * mod_reduce(tl.p2.start - tl.p1.start, p) % p), p);
  auto in_seg = [&](i64 z, i64 start, i64 len) { return mod_reduce(z - start, p) < len; };
  auto count_in = [&](i64 start, i64 len) {
    i64 n = 0;
    t.window.captured.for_each([&](i64 y) {
      // captured holds d x; recover z from y.
      const i64 z = static_cast<i64>((static_cast<__int128>(r_inv) * mod_reduce(y - t.window.u - tl.p1.start, p)) % p);
      n += in_seg(z, start, len) ? 1 : 0;
    });
    return n;
  };
  if (count_in(c, w2) > count_in(0, w1)) {
    // Reflect z -> (c + w2 - 1) - z so the heavier segment starts at 0.
    const i64 pivot = mod_reduce(c + w2 - 1, p);
    scale = mod_reduce(-scale, p);
    shift = mod_reduce(pivot - shift, p);
    c = mod_reduce(c + w2 - w1, p);
    std::swap(w1, w2);
  }
  EngineParts parts;
  parts.scale = scale;
  parts.shift = shift;
  parts.width_prime = w1;
  parts.width_second = w2;
  {
    std::vector<i64> p1v, p2v, rv;
    const ResidueSet a1_orig = dilate(t.window.captured, mod_inverse(t.window.d, p));
    a.for_each([&](i64 x) {
      const i64 z = mod_reduce(static_cast<i64>(static_cast<__int128>(scale) * x % p) + shift, p);
      if (!a1_orig.contains(x)) {
        rv.push_back(z);
      } else if (in_seg(z, 0, w1)) {
        p1v.push_back(z);
      } else {
        p2v.push_back(z);
      }
    });
    parts.a1_prime = ResidueSet::from_elements(p, p1v);
    parts.a1_second = ResidueSet::from_elements(p, p2v);
    parts.rest = ResidueSet::from_elements(p, rv);
  }
  t.c = c;
  t.parts = parts;
  {
    const double kk = static_cast<double>(t.size);
    const double pp = static_cast<double>(p);
    const double cc = static_cast<double>(c);
    detail::annotate(t, "segment_widths", "|S'|, |S''| <= 3|A|",
                     std::to_string(w1) + ", " + std::to_string(w2), w1 <= 3 * t.size && w2 <= 3 * t.size);
    detail::annotate(t, "rest_fraction", "|R| >= 0.17|A|",
                     detail::fmt(static_cast<double>(parts.rest.size()) / kk), 100 * static_cast<i64>(parts.rest.size()) >= 17 * t.size);
    detail::annotate(t, "c_interval_i", "c in [p - 9|A|, p + 9|A|]", std::to_string(c), cc >= pp - 9 * kk);
    detail::annotate(t, "c_interval_ii", "c in [p/2 - 4.5|A|, p/2 + 4.5|A|]", std::to_string(c),
                     cc >= pp / 2 - 4.5 * kk && cc <= pp / 2 + 4.5 * kk);
    detail::annotate(t, "c_interval_iii", "c in [p/3 - 3|A|, p/3 + 3|A|]", std::to_string(c),
                     cc >= pp / 3 - 3 * kk && cc <= pp / 3 + 3 * kk);
  }

  const ResidueSet probe = sumset(parts.a1_second, parts.rest);
  auto first_common = [](const ResidueSet& x, const ResidueSet& y) -> std::optional<i64> {
    const ResidueSet both = set_intersection(x, y);
    if (both.empty()) return std::nullopt;
    return both.elements().front();
  };
  if (auto hit = first_common(probe, sumset(parts.a1_second))) {
    t.branch = EngineBranch::Diagnostic;
    t.attempted = EngineBranch::Case2i;
    t.message = "(A1'' + R) meets 2A1'' at " + std::to_string(*hit) + " (normalized coordinates)";
    t.reverified = true;
    return t;
  }
  struct Sub {
    EngineBranch branch;
    ResidueSet target;
    i64 factor;
  };
  const std::vector<Sub> subs{{EngineBranch::Case2ii, sumset(parts.a1_prime, parts.a1_second), 2},
                              {EngineBranch::Case2iii, sumset(parts.a1_prime), 3}};
  for (const auto& sub : subs) {
    if (!first_common(probe, sub.target)) continue;
    if (auto cr = detail::cover_after_dilation(a, mod_reduce(sub.factor * scale, p), why)) {
      finish(sub.branch, *cr, sub.factor);
    } else {
      detail::fallback(a, t, sub.branch, why);
    }
    t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
    return t;
  }
  detail::fallback(a, t, EngineBranch::Case2ii, "A1'' + R meets none of 2A1', A1' + A1'', 2A1''");
  t.reverified = !t.result || (ap_covers(t.result->witness, a) && t.result->within_bound);
  return t;
}

}  // namespace addcomb
