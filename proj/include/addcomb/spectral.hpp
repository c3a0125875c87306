#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

#include "addcomb/error.hpp"
#include "addcomb/fft.hpp"
#include "addcomb/residue_set.hpp"

namespace addcomb {

inline constexpr double kMagnitudeTolerance = 1e-6;

/// Fourier transform of the indicator of a ⊂ Z_p, F(x) = sum_{a in A} e^{2 pi i a x / p}.
/// Small inputs are summed directly against a twiddle table indexed by (a*x mod p);
/// larger ones go through Bluestein.
inline std::vector<fft::cplx> fourier_transform(const ResidueSet& a) {
  const i64 p = a.modulus();
  const auto elems = a.elements();
  const auto n = static_cast<std::size_t>(p);
  std::vector<fft::cplx> out(n);
  if (static_cast<double>(elems.size()) * static_cast<double>(p) <= 4.0e6) {
    std::vector<fft::cplx> twiddle(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
      twiddle[j] = {std::cos(ang), std::sin(ang)};
    }
    for (i64 x = 0; x < p; ++x) {
      fft::cplx acc = 0.0;
      for (i64 e : elems) acc += twiddle[static_cast<std::size_t>(e * x % p)];
      out[static_cast<std::size_t>(x)] = acc;
    }
  } else {
    std::vector<fft::cplx> ind(n, 0.0);
    for (i64 e : elems) ind[static_cast<std::size_t>(e)] = 1.0;
    out = fft::dft(ind);
  }
  out[0] = static_cast<double>(elems.size());
  return out;
}

/// Single coefficient |F(d)| by direct summation.
inline double fourier_magnitude(const ResidueSet& a, i64 d) {
  const i64 p = a.modulus();
  fft::cplx acc = 0.0;
  a.for_each([&](i64 e) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(static_cast<__int128>(e) * mod_reduce(d, p) % p) /
                       static_cast<double>(p);
    acc += fft::cplx{std::cos(ang), std::sin(ang)};
  });
  return std::abs(acc);
}

struct Spectrum {
  i64 modulus = 0;
  std::vector<double> magnitudes;  // |F(d)| for d = 0..p-1
  double tolerance = kMagnitudeTolerance;

  /// |sum |F(d)|^2 - |A| p| / (|A| p).
  double parseval_residual() const {
    double total = 0.0;
    for (double m : magnitudes) total += m * m;
    const double expected = magnitudes[0] * static_cast<double>(modulus);
    return expected == 0.0 ? std::abs(total) : std::abs(total - expected) / expected;
  }
};

inline Spectrum spectrum(const ResidueSet& a) {
  require_prime(a, "spectrum");
  const auto f = fourier_transform(a);
  Spectrum s;
  s.modulus = a.modulus();
  s.magnitudes.resize(f.size());
  s.magnitudes[0] = static_cast<double>(a.size());
  // The indicator is real, so F(p - d) = conj F(d); store one value for both.
  for (std::size_t d = 1; d < f.size(); ++d) {
    const std::size_t mirror = f.size() - d;
    s.magnitudes[d] = d <= mirror ? std::abs(f[d]) : s.magnitudes[mirror];
  }
  return s;
}

/// ((p/|2A| - 1) / (p/|A| - 1))^{1/2} |A|, the guaranteed size of some nontrivial coefficient.
inline double large_coefficient_bound(i64 p, std::size_t size, std::size_t doubling) {
  if (size == 0 || static_cast<i64>(size) >= p) return 0.0;
  const double pp = static_cast<double>(p);
  const double num = pp / static_cast<double>(doubling) - 1.0;
  const double den = pp / static_cast<double>(size) - 1.0;
  return std::sqrt(std::max(0.0, num / den)) * static_cast<double>(size);
}

struct LargestCoefficient {
  i64 d = 1;
  double magnitude = 0.0;
  double bound = 0.0;
};

/// Smallest d in 1..p-1 attaining the maximal |F(d)|; asserts the Cauchy-Schwarz bound.
inline LargestCoefficient largest_coefficient(const ResidueSet& a, const Spectrum& spec) {
  require_prime(a, "largest_coefficient");
  require(!a.empty(), ErrorCode::EmptySet, "largest coefficient of an empty set");
  LargestCoefficient r;
  const i64 p = a.modulus();
  double best = -1.0;
  for (i64 d = 1; d < p; ++d) best = std::max(best, spec.magnitudes[static_cast<std::size_t>(d)]);
  const double tie = 1e-9 * std::max(1.0, static_cast<double>(a.size()));
  for (i64 d = 1; d < p; ++d) {
    if (spec.magnitudes[static_cast<std::size_t>(d)] >= best - tie) {
      r.d = d;
      r.magnitude = spec.magnitudes[static_cast<std::size_t>(d)];
      break;
    }
  }
  r.bound = large_coefficient_bound(p, a.size(), sumset(a).size());
  require(r.magnitude >= r.bound - kMagnitudeTolerance, ErrorCode::InternalConsistency,
          "largest Fourier coefficient below the Cauchy-Schwarz bound for " + to_literal(a));
  return r;
}

inline LargestCoefficient largest_coefficient(const ResidueSet& a) { return largest_coefficient(a, spectrum(a)); }

/// |sum_x F_A(x)^2 conj(F_2A(x)) - |A|^2 p| / (|A|^2 p).
inline double cs_identity_residual(const ResidueSet& a) {
  require_prime(a, "cs_identity_residual");
  require(!a.empty(), ErrorCode::EmptySet, "empty set");
  const auto fa = fourier_transform(a);
  const auto f2a = fourier_transform(sumset(a));
  fft::cplx total = 0.0;
  for (std::size_t x = 0; x < fa.size(); ++x) total += fa[x] * fa[x] * std::conj(f2a[x]);
  const double k = static_cast<double>(a.size());
  const double expected = k * k * static_cast<double>(a.modulus());
  return std::abs(total - expected) / expected;
}

// ---------------------------------------------------------------------------
// Rectification windows

/// (p + 1)/2 residues: the longest interval whose pairwise sums cannot wrap.
constexpr i64 half_window_size(i64 p) { return (p + 1) / 2; }

struct WindowCount {
  i64 count = 0;
  i64 u = 0;  // smallest start attaining count
};

/// max_u |[u, u + w) ∩ S| over cyclic windows, S given by its sorted elements in Z_p.
inline WindowCount best_window_start(std::span<const i64> sorted, i64 p, i64 w) {
  const std::size_t k = sorted.size();
  WindowCount best;
  if (k == 0) return best;
  auto pos = [&](std::size_t i) { return i < k ? sorted[i] : sorted[i - k] + p; };
  std::size_t j = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (j < i) j = i;
    while (j + 1 < i + k && pos(j + 1) <= sorted[i] + w - 1) ++j;
    const i64 count = static_cast<i64>(j - i + 1);
    // Every start in [pos(j) - w + 1, sorted[i]] captures exactly these elements.
    const i64 lo = pos(j) - w + 1;
    const i64 u = lo <= 0 ? 0 : lo;
    if (count > best.count || (count == best.count && u < best.u)) best = {count, u};
  }
  return best;
}

inline std::vector<i64> dilated_sorted(const ResidueSet& a, i64 d, std::vector<u64>& scratch) {
  const i64 p = a.modulus();
  scratch.assign(a.words().size(), 0);
  a.for_each([&](i64 x) {
    const i64 y = static_cast<i64>(static_cast<__int128>(x) * d % p);
    scratch[static_cast<std::size_t>(y / 64)] |= u64{1} << (y % 64);
  });
  std::vector<i64> out;
  out.reserve(a.size());
  bits::for_each_bit(scratch, [&](i64 y) { out.push_back(y); });
  return out;
}

enum class WindowMode { Auto, Exact, FourierGuided };

constexpr std::string_view to_string(WindowMode m) {
  switch (m) {
    case WindowMode::Auto: return "auto";
    case WindowMode::Exact: return "exact";
    case WindowMode::FourierGuided: return "fourier_guided";
  }
  return "?";
}

inline constexpr i64 kExactWindowCutoff = i64{1} << 14;

/// captured = [u, u + window_size) ∩ d·A, in dilated coordinates.
struct RectWindow {
  i64 d = 1;
  i64 u = 0;
  ResidueSet captured{2};
  i64 window_size = 1;
  WindowMode mode = WindowMode::Exact;
  double fourier_magnitude = 0.0;  // |F(d)| for the chosen d
};

inline ResidueSet window_capture(const ResidueSet& a, i64 d, i64 u, i64 w) {
  const i64 p = a.modulus();
  std::vector<i64> kept;
  a.for_each([&](i64 x) {
    const i64 y = static_cast<i64>(static_cast<__int128>(x) * d % p);
    if (mod_reduce(y - u, p) < w) kept.push_back(y);
  });
  return ResidueSet::from_elements(p, kept);
}

/// The window maximizing |[u, u+p/2) ∩ d·A|. Exact mode sweeps every d (only
/// d <= (p-1)/2: d and p - d capture equally many, and d is the smaller one); the
/// Fourier-guided mode takes d from the largest coefficient.
inline RectWindow best_half_window(const ResidueSet& a, WindowMode mode = WindowMode::Auto) {
  require_prime(a, "best_half_window");
  const i64 p = a.modulus();
  const i64 w = half_window_size(p);
  if (mode == WindowMode::Auto) mode = p <= kExactWindowCutoff ? WindowMode::Exact : WindowMode::FourierGuided;

  RectWindow out;
  out.window_size = w;
  out.mode = mode;
  std::vector<u64> scratch;
  if (mode == WindowMode::Exact) {
    WindowCount best{-1, 0};
    i64 best_d = 1;
    for (i64 d = 1; d <= std::max<i64>(1, (p - 1) / 2); ++d) {
      const auto sorted = dilated_sorted(a, d, scratch);
      const WindowCount wc = best_window_start(sorted, p, w);
      if (wc.count > best.count) {
        best = wc;
        best_d = d;
      }
      if (best.count == static_cast<i64>(a.size())) break;
    }
    out.d = best_d;
    out.u = best.u;
    out.fourier_magnitude = fourier_magnitude(a, best_d);
  } else {
    require(!a.empty(), ErrorCode::EmptySet, "window of an empty set");
    const auto lc = largest_coefficient(a);
    const auto sorted = dilated_sorted(a, lc.d, scratch);
    const WindowCount wc = best_window_start(sorted, p, w);
    out.d = lc.d;
    out.u = wc.u;
    out.fourier_magnitude = lc.magnitude;
    require(static_cast<double>(wc.count) >=
                (static_cast<double>(a.size()) + lc.magnitude) / 2.0 - kMagnitudeTolerance,
            ErrorCode::InternalConsistency, "rectification window below the Fourier guarantee");
  }
  out.captured = window_capture(a, out.d, out.u, w);
  return out;
}

/// max_u |[u, u+p/2) ∩ d·A| for one fixed d.
inline i64 max_window_count(const ResidueSet& a, i64 d) {
  std::vector<u64> scratch;
  const auto sorted = dilated_sorted(a, mod_reduce(d, a.modulus()), scratch);
  return best_window_start(sorted, a.modulus(), half_window_size(a.modulus())).count;
}

}  // namespace addcomb
