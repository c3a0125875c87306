#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/ap.hpp"
#include "addcomb/covering.hpp"
#include "addcomb/error.hpp"
#include "addcomb/exact.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/residue_set.hpp"

namespace addcomb {

/// A finite subset of Z^a x Z_{n_1} x ... : one coordinate per entry of moduli, 0 meaning Z.
struct AdditiveSet {
  std::vector<std::vector<i64>> points;
  std::vector<i64> moduli;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dimension() const noexcept { return moduli.size(); }

  static AdditiveSet from(const IntSet& a) {
    AdditiveSet s;
    s.moduli = {0};
    for (i64 x : a) s.points.push_back({x});
    return s;
  }

  static AdditiveSet from(const ResidueSet& a) {
    AdditiveSet s;
    s.moduli = {a.modulus()};
    a.for_each([&](i64 x) { s.points.push_back({x}); });
    return s;
  }

  /// Points of Z^d; repeated points are rejected.
  static AdditiveSet from_points(std::vector<std::vector<i64>> points, std::size_t d) {
    AdditiveSet s;
    s.moduli.assign(d, 0);
    for (const auto& p : points) require(p.size() == d, ErrorCode::ParseError, "point of wrong dimension");
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorCode::ParseError,
            "duplicate point");
    s.points = std::move(points);
    return s;
  }

  std::vector<i64> sum(std::size_t i, std::size_t j) const {
    std::vector<i64> out(moduli.size());
    for (std::size_t c = 0; c < moduli.size(); ++c) {
      const i64 v = points[i][c] + points[j][c];
      out[c] = moduli[c] == 0 ? v : mod_reduce(v, moduli[c]);
    }
    return out;
  }
};

/// Partition of the unordered pairs {i <= j} by the value of a_i + a_j.
struct SumClasses {
  std::size_t k = 0;
  std::vector<std::uint32_t> cls;  // indexed by pair_index(i, j)
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> members;  // pairs in ground order

  std::size_t count() const noexcept { return members.size(); }

  std::size_t pair_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * k - i * (i + 1) / 2 + j;
  }
  std::uint32_t of(std::size_t i, std::size_t j) const { return cls[pair_index(i, j)]; }
};

inline SumClasses sum_classes(const AdditiveSet& a) {
  SumClasses sc;
  sc.k = a.size();
  const std::size_t pairs = sc.k * (sc.k + 1) / 2;
  sc.cls.assign(pairs, 0);
  struct Entry {
    std::vector<i64> key;
    std::uint32_t i, j;
  };
  std::vector<Entry> entries;
  entries.reserve(pairs);
  for (std::size_t i = 0; i < sc.k; ++i) {
    for (std::size_t j = i; j < sc.k; ++j) {
      entries.push_back({a.sum(i, j), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.key < y.key; });
  for (std::size_t t = 0; t < entries.size(); ++t) {
    if (t == 0 || entries[t].key != entries[t - 1].key) sc.members.emplace_back();
    const auto id = static_cast<std::uint32_t>(sc.members.size() - 1);
    sc.members.back().push_back({entries[t].i, entries[t].j});
    sc.cls[sc.pair_index(entries[t].i, entries[t].j)] = id;
  }
  return sc;
}

/// A quadruple of ground indices (a, b, c, e): a <= b, c <= e, (a, b) < (c, e).
struct Quadruple {
  std::uint32_t a, b, c, e;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// Additive-quadruple constraints on f: ground -> Q. Required quadruples satisfy
/// a + b = c + e in the ambient group, forbidden ones do not.
class RelationSystem {
 public:
  explicit RelationSystem(AdditiveSet ground) : ground_(std::move(ground)), classes_(sum_classes(ground_)) {}

  const AdditiveSet& ground() const noexcept { return ground_; }
  const SumClasses& classes() const noexcept { return classes_; }
  std::size_t unknowns() const noexcept { return ground_.size(); }

  std::vector<Quadruple> required() const {
    std::vector<Quadruple> out;
    for (const auto& m : classes_.members) {
      for (std::size_t x = 0; x < m.size(); ++x) {
        for (std::size_t y = x + 1; y < m.size(); ++y) out.push_back({m[x].first, m[x].second, m[y].first, m[y].second});
      }
    }
    std::sort(out.begin(), out.end(), [](const Quadruple& p, const Quadruple& q) {
      return std::tie(p.a, p.b, p.c, p.e) < std::tie(q.a, q.b, q.c, q.e);
    });
    return out;
  }

  std::size_t required_count() const {
    std::size_t n = 0;
    for (const auto& m : classes_.members) n += m.size() * (m.size() - 1) / 2;
    return n;
  }

  std::size_t forbidden_count() const {
    const std::size_t pairs = classes_.cls.size();
    return pairs * (pairs - 1) / 2 - required_count();
  }

  /// e_a + e_b - e_c - e_e.
  BigVector row(const Quadruple& q) const {
    BigVector r(unknowns(), 0);
    r[q.a] += 1;
    r[q.b] += 1;
    r[q.c] -= 1;
    r[q.e] -= 1;
    return r;
  }

  /// Each pair of a class against the class's first pair; spans the required rows.
  std::vector<BigVector> spanning_rows() const {
    std::vector<BigVector> out;
    for (const auto& m : classes_.members) {
      for (std::size_t x = 1; x < m.size(); ++x) out.push_back(row({m[0].first, m[0].second, m[x].first, m[x].second}));
    }
    return out;
  }

 private:
  AdditiveSet ground_;
  SumClasses classes_;
};

enum class NullspaceRoute { Propagation, Dense };

constexpr std::string_view to_string(NullspaceRoute r) {
  return r == NullspaceRoute::Propagation ? "propagation" : "dense";
}

namespace detail {

using Expr = std::vector<i64>;  // integer combination of free parameters; missing entries are 0

inline bool combine(const Expr& x, const Expr& y, i64 sign, Expr& out) {
  out.assign(std::max(x.size(), y.size()), 0);
  for (std::size_t t = 0; t < out.size(); ++t) {
    const i64 xv = t < x.size() ? x[t] : 0;
    const i64 yv = t < y.size() ? y[t] : 0;
    i64 prod = 0;
    if (__builtin_mul_overflow(yv, sign, &prod) || __builtin_add_overflow(xv, prod, &out[t])) return false;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return true;
}

struct Overflow {};

/// Solves the required system by propagation: an unknown f(a) or class sum is fixed as soon
/// as a pair makes it determined, a fresh parameter is introduced only when nothing propagates,
/// and every pair seen twice contributes a consistency row on the parameters. Those rows are
/// then solved exactly.
inline std::vector<BigVector> propagation_nullspace(const RelationSystem& rs) {
  const SumClasses& sc = rs.classes();
  const std::size_t k = sc.k;
  std::vector<Expr> f(k), sigma(sc.count());
  std::vector<char> f_known(k, 0), s_known(sc.count(), 0);
  std::vector<std::uint32_t> processed;
  std::vector<char> is_processed(k, 0);
  std::deque<std::uint32_t> queue;
  std::vector<Expr> rows;
  std::size_t params = 0;
  std::size_t known = 0;
  Expr tmp;

  auto assign_f = [&](std::uint32_t i, Expr e) {
    f[i] = std::move(e);
    f_known[i] = 1;
    ++known;
    queue.push_back(i);
  };
  auto fix_sigma = [&](std::uint32_t c, Expr e) {
    sigma[c] = std::move(e);
    s_known[c] = 1;
    for (const auto& [x, y] : sc.members[c]) {
      if (x == y || f_known[x] == f_known[y]) continue;
      const auto have = f_known[x] ? x : y;
      const auto want = f_known[x] ? y : x;
      if (!combine(sigma[c], f[have], -1, tmp)) throw Overflow{};
      assign_f(want, tmp);
    }
  };

  while (known < k) {
    const auto first = static_cast<std::uint32_t>(std::find(f_known.begin(), f_known.end(), 0) - f_known.begin());
    Expr fresh(params + 1, 0);
    fresh[params++] = 1;
    assign_f(first, std::move(fresh));
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      processed.push_back(i);
      is_processed[i] = 1;
      for (const auto j : processed) {
        const auto c = sc.of(i, j);
        Expr s;
        if (!combine(f[i], f[j], 1, s)) throw Overflow{};
        if (!s_known[c]) {
          fix_sigma(c, std::move(s));
        } else {
          if (!combine(s, sigma[c], -1, tmp)) throw Overflow{};
          if (!tmp.empty()) rows.push_back(tmp);
        }
      }
    }
  }

  // Deduplicate the consistency rows up to sign and scale.
  for (auto& r : rows) {
    r.resize(params, 0);
    i64 g = 0;
    for (i64 v : r) g = std::gcd(g, v);
    auto lead = std::find_if(r.begin(), r.end(), [](i64 v) { return v != 0; });
    if (*lead < 0) g = -g;
    for (auto& v : r) v /= g;
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  IntMatrix m(0, params);
  for (const auto& r : rows) {
    BigVector b(r.begin(), r.end());
    m.append_row(b);
  }
  std::vector<BigVector> kernel;
  if (rows.empty()) {
    for (std::size_t t = 0; t < params; ++t) {
      BigVector e(params, 0);
      e[t] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = integer_nullspace(std::move(m));
  }
  std::vector<BigVector> out;
  for (const auto& lam : kernel) {
    BigVector v(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t t = 0; t < f[i].size(); ++t) v[i] += BigInt(f[i][t]) * lam[t];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Canonical basis (reduced echelon, primitive rows) of {f : f(a)+f(b) = f(c)+f(e) for every
/// required quadruple}. Both routes return identical output.
inline std::vector<BigVector> relation_nullspace(const RelationSystem& rs,
                                                 NullspaceRoute route = NullspaceRoute::Propagation) {
  const std::size_t k = rs.unknowns();
  if (k == 0) return {};
  if (route == NullspaceRoute::Propagation) {
    try {
      return canonical_row_basis(detail::propagation_nullspace(rs), k);
    } catch (const detail::Overflow&) {
      // Parameter coefficients left 64 bits; fall through to the dense route.
    }
  }
  IntMatrix m(0, k);
  for (const auto& r : rs.spanning_rows()) m.append_row(r);
  return canonical_row_basis(integer_nullspace(std::move(m)), k);
}

struct DimensionResult {
  i64 dim = 0;
  std::vector<BigVector> nullspace_basis;
};

inline DimensionResult additive_dimension(const AdditiveSet& a, NullspaceRoute route = NullspaceRoute::Propagation) {
  require(a.size() >= 2, ErrorCode::Undefined, "additive dimension needs at least two elements");
  DimensionResult r;
  r.nullspace_basis = relation_nullspace(RelationSystem(a), route);
  r.dim = static_cast<i64>(r.nullspace_basis.size()) - 1;
  return r;
}

inline DimensionResult additive_dimension(const IntSet& a, NullspaceRoute route = NullspaceRoute::Propagation) {
  return additive_dimension(AdditiveSet::from(a), route);
}

namespace detail {

/// Coordinates of element i in the nullspace basis.
inline BigVector embed(const std::vector<BigVector>& basis, std::size_t i) {
  BigVector v;
  v.reserve(basis.size());
  for (const auto& row : basis) v.push_back(row[i]);
  return v;
}

/// True iff distinct sum classes get distinct embedded sums.
inline bool classes_separated(const SumClasses& sc, const std::vector<BigVector>& basis) {
  std::vector<BigVector> sums;
  sums.reserve(sc.count());
  for (const auto& m : sc.members) {
    BigVector s(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) s[r] = basis[r][m[0].first] + basis[r][m[0].second];
    sums.push_back(std::move(s));
  }
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

}  // namespace detail

/// Rectifiable iff some rational solution of the required system separates every forbidden
/// quadruple, i.e. iff the universal embedding separates the sum classes.
inline bool is_rectifiable(const AdditiveSet& a) {
  if (a.size() <= 1) return true;
  RelationSystem rs(a);
  return detail::classes_separated(rs.classes(), relation_nullspace(rs));
}

inline bool is_rectifiable(const ResidueSet& a) {
  if (a.size() <= 1) return true;
  // A progression of length L whose step has orbit >= 2L - 1 lifts to [0, L) without wrap.
  const ApCover c = min_ap_cover_cyclic(a);
  const i64 orbit = a.modulus() / std::gcd(c.witness.step, a.modulus());
  if (2 * c.length - 1 <= orbit) return true;
  return is_rectifiable(AdditiveSet::from(a));
}

/// True iff mapping (ground index of a -> ground index of b) is an F2-isomorphism.
inline bool is_F2_isomorphism(const AdditiveSet& a, const AdditiveSet& b, const std::vector<std::size_t>& mapping) {
  if (a.size() != b.size() || mapping.size() != a.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (auto t : mapping) {
    if (t >= b.size() || hit[t]) return false;
    hit[t] = 1;
  }
  const auto ca = sum_classes(a);
  const auto cb = sum_classes(b);
  if (ca.count() != cb.count()) return false;
  std::vector<std::int64_t> fwd(ca.count(), -1), bwd(cb.count(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) {
      const auto x = ca.of(i, j);
      const auto y = cb.of(mapping[i], mapping[j]);
      if (fwd[x] == -1 && bwd[y] == -1) {
        fwd[x] = y;
        bwd[y] = x;
      } else if (fwd[x] != static_cast<std::int64_t>(y) || bwd[y] != static_cast<std::int64_t>(x)) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

/// Per-element signature: size of the class of (i, i), then the sorted sizes of the classes of (i, j).
inline std::vector<std::size_t> element_signature(const SumClasses& sc, std::size_t i) {
  std::vector<std::size_t> sig;
  sig.reserve(sc.k + 1);
  for (std::size_t j = 0; j < sc.k; ++j) sig.push_back(sc.members[sc.of(i, j)].size());
  std::sort(sig.begin(), sig.end());
  sig.insert(sig.begin(), sc.members[sc.of(i, i)].size());
  return sig;
}

}  // namespace detail

/// Backtracking search for an F2-isomorphism; on success fills *mapping if given.
inline bool is_F2_isomorphic(const AdditiveSet& a, const AdditiveSet& b, std::vector<std::size_t>* mapping = nullptr) {
  const std::size_t k = a.size();
  if (k != b.size()) return false;
  if (k == 0) {
    if (mapping) mapping->clear();
    return true;
  }
  const auto ca = sum_classes(a);
  const auto cb = sum_classes(b);
  if (ca.count() != cb.count()) return false;
  {
    std::vector<std::size_t> sa, sb;
    for (const auto& m : ca.members) sa.push_back(m.size());
    for (const auto& m : cb.members) sb.push_back(m.size());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<std::vector<std::size_t>> sig_a(k), sig_b(k);
  for (std::size_t i = 0; i < k; ++i) {
    sig_a[i] = detail::element_signature(ca, i);
    sig_b[i] = detail::element_signature(cb, i);
  }
  std::vector<std::vector<std::size_t>> cand(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (sig_a[i] == sig_b[j]) cand[i].push_back(j);
    }
    if (cand[i].empty()) return false;
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return cand[x].size() < cand[y].size(); });

  std::vector<std::int64_t> fwd(ca.count(), -1), bwd(cb.count(), -1);
  std::vector<std::size_t> phi(k, 0);
  std::vector<char> used(k, 0);
  std::vector<std::uint32_t> trail;

  auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      const auto x = trail.back();
      trail.pop_back();
      bwd[static_cast<std::size_t>(fwd[x])] = -1;
      fwd[x] = -1;
    }
  };

  auto search = [&](auto&& self, std::size_t level) -> bool {
    if (level == k) return true;
    const std::size_t i = order[level];
    for (const std::size_t t : cand[i]) {
      if (used[t]) continue;
      const std::size_t mark = trail.size();
      phi[i] = t;
      bool ok = true;
      for (std::size_t l = 0; l <= level && ok; ++l) {
        const std::size_t j = order[l];
        const auto x = ca.of(i, j);
        const auto y = cb.of(t, j == i ? t : phi[j]);
        if (fwd[x] == -1 && bwd[y] == -1) {
          fwd[x] = y;
          bwd[y] = x;
          trail.push_back(x);
        } else if (fwd[x] != static_cast<std::int64_t>(y) || bwd[y] != static_cast<std::int64_t>(x)) {
          ok = false;
        }
      }
      if (ok) {
        used[t] = 1;
        if (self(self, level + 1)) return true;
        used[t] = 0;
      }
      undo_to(mark);
    }
    return false;
  };

  if (!search(search, 0)) return false;
  if (mapping) *mapping = phi;
  return true;
}

inline bool is_F2_isomorphic(const IntSet& a, const IntSet& b) {
  return is_F2_isomorphic(AdditiveSet::from(a), AdditiveSet::from(b));
}

/// An integer F2-isomorphic image; values[i] is the image of the i-th ground element.
struct Rectification {
  IntSet image;
  std::vector<i64> values;
  std::vector<i64> coefficients;  // combination of the nullspace basis that was used
};

namespace detail {

inline std::optional<std::vector<BigInt>> try_combination(const SumClasses& sc, const std::vector<BigVector>& basis,
                                                          const std::vector<BigInt>& lam) {
  std::vector<BigInt> f(sc.k, 0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (lam[r] == 0) continue;
    for (std::size_t i = 0; i < sc.k; ++i) f[i] += lam[r] * basis[r][i];
  }
  std::vector<BigInt> sums;
  sums.reserve(sc.count());
  for (const auto& m : sc.members) sums.push_back(f[m[0].first] + f[m[0].second]);
  std::sort(sums.begin(), sums.end());
  if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) return std::nullopt;
  return f;
}

inline constexpr std::size_t kRectifyBoxBudget = 20000;

}  // namespace detail

/// Integer rectification of an arbitrary finite set. Coefficient vectors over the nullspace
/// basis are tried in increasing max-norm, then along the moment curve (t, t^2, ...), which
/// must succeed for some t because each forbidden functional is a nonzero polynomial in t.
inline Rectification rectify(const AdditiveSet& a) {
  require(a.size() >= 1, ErrorCode::EmptySet, "rectify of an empty set");
  RelationSystem rs(a);
  const auto& sc = rs.classes();
  const auto basis = relation_nullspace(rs);
  require(a.size() == 1 || detail::classes_separated(sc, basis), ErrorCode::NotRectifiable,
          "set is not F2-isomorphic to a set of integers");

  const std::size_t m = basis.size();
  std::optional<std::vector<BigInt>> found;
  std::vector<BigInt> lam(m, 0);
  if (a.size() == 1) {
    found = std::vector<BigInt>{0};
  }
  std::size_t tried = 0;
  for (i64 norm = 1; !found && tried < detail::kRectifyBoxBudget; ++norm) {
    std::vector<i64> digits(m, -norm);
    while (!found && tried < detail::kRectifyBoxBudget) {
      bool on_shell = false;
      for (i64 v : digits) on_shell = on_shell || v == norm || v == -norm;
      if (on_shell) {
        ++tried;
        for (std::size_t r = 0; r < m; ++r) lam[r] = digits[r];
        found = detail::try_combination(sc, basis, lam);
      }
      std::size_t pos = m;
      while (pos > 0 && digits[pos - 1] == norm) digits[--pos] = -norm;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
  const BigInt t_limit = BigInt(sc.count()) * sc.count() * (m + 1) + 2;
  for (BigInt t = 2; !found && t <= t_limit; ++t) {
    BigInt pw = 1;
    for (std::size_t r = 0; r < m; ++r) {
      pw *= t;
      lam[r] = pw;
    }
    found = detail::try_combination(sc, basis, lam);
  }
  require(found.has_value(), ErrorCode::InternalConsistency, "no separating combination found");

  // Translate to min 0 and divide by the gcd of differences.
  const auto& f = *found;
  BigInt lo = *std::min_element(f.begin(), f.end());
  BigInt g = 0;
  for (const auto& v : f) g = boost::multiprecision::gcd(g, v - lo);
  if (g == 0) g = 1;
  Rectification out;
  for (const auto& v : f) {
    const BigInt y = (v - lo) / g;
    require(y <= std::numeric_limits<i64>::max(), ErrorCode::RangeError, "rectified values exceed 64 bits");
    out.values.push_back(static_cast<i64>(y));
  }
  for (const auto& l : lam) {
    out.coefficients.push_back(l <= std::numeric_limits<i64>::max() && l >= std::numeric_limits<i64>::min()
                                   ? static_cast<i64>(l)
                                   : 0);
  }
  out.image = IntSet::from_elements(out.values);

  std::vector<std::size_t> id(a.size());
  AdditiveSet img;
  img.moduli = {0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    id[i] = i;
    img.points.push_back({out.values[i]});
  }
  require(is_F2_isomorphism(a, img, id), ErrorCode::InternalConsistency, "rectification is not an F2-isomorphism");
  return out;
}

inline Rectification rectify(const ResidueSet& a) { return rectify(AdditiveSet::from(a)); }

// ---------------------------------------------------------------------------
// Dimension consequences

struct DimensionBound {
  i64 dim = 0;
  i64 size = 0;
  i64 doubling = 0;
  i64 rhs = 0;  // (d + 1)|A| - d(d + 1)/2
  bool holds = false;
};

inline DimensionBound dimension_lower_bound_check(const IntSet& a) {
  require(a.size() >= 2, ErrorCode::Undefined, "dimension bound needs at least two elements");
  DimensionBound r;
  r.dim = additive_dimension(a).dim;
  r.size = static_cast<i64>(a.size());
  r.doubling = static_cast<i64>(int_sumset(a).size());
  r.rhs = (r.dim + 1) * r.size - r.dim * (r.dim + 1) / 2;
  r.holds = r.doubling >= r.rhs;
  return r;
}

/// Affine map x -> linear . x + offset on Q^d.
struct AffineMap {
  std::vector<Rational> linear;
  Rational offset;

  Rational operator()(const std::vector<i64>& x) const {
    Rational v = offset;
    for (std::size_t c = 0; c < linear.size(); ++c) v += linear[c] * x[c];
    return v;
  }
};

/// Affine extension of a pointwise map on a full-dimensional set of Z^d: solve on an affine
/// basis, then check the remaining points.
inline AffineMap affine_extension(const std::vector<std::vector<i64>>& points, const std::vector<i64>& phi) {
  require(!points.empty() && points.size() == phi.size(), ErrorCode::InvalidParams, "points and values differ in count");
  const std::size_t d = points[0].size();
  for (const auto& p : points) require(p.size() == d, ErrorCode::InvalidParams, "points of mixed dimension");

  // Greedy affine basis: keep a difference vector if it raises the rank.
  std::vector<std::vector<Rational>> echelon;  // reduced copies used for the rank test
  std::vector<std::size_t> chosen;
  std::vector<std::size_t> lead;
  for (std::size_t i = 1; i < points.size() && chosen.size() < d; ++i) {
    std::vector<Rational> v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = points[i][c] - points[0][c];
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      if (v[lead[r]] == 0) continue;
      const Rational f = v[lead[r]] / echelon[r][lead[r]];
      for (std::size_t c = 0; c < d; ++c) v[c] -= f * echelon[r][c];
    }
    const auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (nz == v.end()) continue;
    lead.push_back(static_cast<std::size_t>(nz - v.begin()));
    echelon.push_back(std::move(v));
    chosen.push_back(i);
  }
  require(chosen.size() == d, ErrorCode::NotFullDimensional, "points lie in a proper affine subspace");

  // Solve D w = phi(x_i) - phi(x_0) over the chosen basis by Gauss-Jordan on Q.
  std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(d + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) aug[r][c] = points[chosen[r]][c] - points[0][c];
    aug[r][d] = Rational(phi[chosen[r]] - phi[0]);
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (aug[piv][c] == 0) ++piv;
    std::swap(aug[piv], aug[c]);
    const Rational inv = 1 / aug[c][c];
    for (auto& v : aug[c]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || aug[r][c] == 0) continue;
      const Rational f = aug[r][c];
      for (std::size_t j = 0; j <= d; ++j) aug[r][j] -= f * aug[c][j];
    }
  }
  AffineMap L;
  L.linear.resize(d);
  for (std::size_t c = 0; c < d; ++c) L.linear[c] = aug[c][d];
  L.offset = Rational(phi[0]);
  for (std::size_t c = 0; c < d; ++c) L.offset -= L.linear[c] * points[0][c];
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(L(points[i]) == phi[i], ErrorCode::NotAnF2Isomorphism,
            "values are not the restriction of an affine map (point " + std::to_string(i) + ")");
  }
  return L;
}

struct TwoLinesCover {
  ApDescriptor p1;  // the progression holding min(A)
  ApDescriptor p2;
  std::string route;  // "embedding" or "direct_search"
  i64 union_size = 0;
  i64 bound = 0;      // |2A| - 2|A| + 3
};

namespace detail {

inline ApDescriptor hull(const std::vector<i64>& part, i64 step) {
  const auto [lo, hi] = std::minmax_element(part.begin(), part.end());
  return ApDescriptor{*lo, step, (*hi - *lo) / step + 1, 0};
}

inline std::optional<TwoLinesCover> check_two_lines(const IntSet& a, const std::vector<i64>& part1,
                                                    const std::vector<i64>& part2, i64 step, i64 bound) {
  if (part1.empty() || part2.empty() || step <= 0) return std::nullopt;
  TwoLinesCover t;
  t.p1 = hull(part1, step);
  t.p2 = hull(part2, step);
  if (t.p2.start < t.p1.start) std::swap(t.p1, t.p2);
  const auto e1 = t.p1.elements();
  const auto e2 = t.p2.elements();
  const IntSet s1 = IntSet::from_values(e1);
  const IntSet s2 = IntSet::from_values(e2);
  std::vector<i64> un = e1;
  un.insert(un.end(), e2.begin(), e2.end());
  const IntSet u = IntSet::from_values(un);
  for (i64 x : a) {
    if (!u.contains(x)) return std::nullopt;
  }
  t.union_size = static_cast<i64>(u.size());
  t.bound = bound;
  if (t.union_size > bound) return std::nullopt;
  const IntSet s11 = int_sumset(s1), s12 = int_sumset(s1, s2), s22 = int_sumset(s2);
  auto disjoint = [](const IntSet& x, const IntSet& y) {
    for (i64 v : x) {
      if (y.contains(v)) return false;
    }
    return true;
  };
  if (!disjoint(s11, s12) || !disjoint(s11, s22) || !disjoint(s12, s22)) return std::nullopt;
  return t;
}

inline std::optional<TwoLinesCover> two_lines_by_embedding(const IntSet& a, const DimensionResult& dr, i64 bound) {
  const std::size_t k = a.size();
  const auto& basis = dr.nullspace_basis;
  std::vector<BigVector> diff(k);
  const BigVector e0 = embed(basis, 0);
  for (std::size_t i = 0; i < k; ++i) {
    diff[i] = embed(basis, i);
    for (std::size_t r = 0; r < e0.size(); ++r) diff[i][r] -= e0[r];
  }
  // Two independent differences, then two coordinates on which they stay independent.
  std::optional<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t i = 1; i < k && !coords; ++i) {
    for (std::size_t j = i + 1; j < k && !coords; ++j) {
      for (std::size_t r = 0; r < e0.size() && !coords; ++r) {
        for (std::size_t s = r + 1; s < e0.size() && !coords; ++s) {
          if (diff[i][r] * diff[j][s] - diff[i][s] * diff[j][r] != 0) coords = {{r, s}};
        }
      }
    }
  }
  if (!coords) return std::nullopt;
  std::vector<std::vector<i64>> q(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (auto r : {coords->first, coords->second}) {
      if (boost::multiprecision::abs(diff[i][r]) > BigInt(std::numeric_limits<i64>::max() / 4)) return std::nullopt;
      q[i].push_back(static_cast<i64>(diff[i][r]));
    }
  }
  std::vector<i64> values(a.begin(), a.end());
  try {
    affine_extension(q, values);
  } catch (const Error&) {
    return std::nullopt;
  }
  const std::array<std::pair<std::size_t, std::size_t>, 3> seeds{{{0, 1}, {0, 2}, {1, 2}}};
  std::optional<TwoLinesCover> best;
  for (const auto& [x, y] : seeds) {
    i64 dx = q[y][0] - q[x][0];
    i64 dy = q[y][1] - q[x][1];
    const i64 g = std::gcd(dx, dy);
    dx /= g;
    dy /= g;
    std::map<__int128, std::vector<i64>> lines;
    for (std::size_t i = 0; i < k; ++i) {
      const __int128 level = static_cast<__int128>(q[i][0]) * dy - static_cast<__int128>(q[i][1]) * dx;
      lines[level].push_back(values[i]);
    }
    if (lines.size() != 2) continue;
    const auto& part1 = lines.begin()->second;
    const auto& part2 = std::next(lines.begin())->second;
    i64 step = 0;
    for (const auto* part : {&part1, &part2}) {
      for (i64 v : *part) step = std::gcd(step, v - part->front());
    }
    if (step == 0) step = std::abs(part2.front() - part1.front());
    auto cand = check_two_lines(a, part1, part2, step, bound);
    if (cand && (!best || cand->union_size < best->union_size)) best = cand;
  }
  if (best) best->route = "embedding";
  return best;
}

inline std::optional<TwoLinesCover> two_lines_by_search(const IntSet& a, i64 bound) {
  std::vector<i64> steps;
  for (i64 x : a) {
    if (x == a.min()) continue;
    for (i64 s : divisors(x - a.min())) steps.push_back(s);
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::optional<TwoLinesCover> best;
  for (i64 r : steps) {
    std::map<i64, std::vector<i64>> residues;
    for (i64 x : a) residues[mod_reduce(x - a.min(), r)].push_back(x);
    std::optional<TwoLinesCover> cand;
    if (residues.size() == 2) {
      cand = check_two_lines(a, residues.begin()->second, std::next(residues.begin())->second, r, bound);
    } else if (residues.size() == 1) {
      const auto& e = a.elements();
      std::size_t cut = 1;
      for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i] - e[i - 1] > e[cut] - e[cut - 1]) cut = i;
      }
      cand = check_two_lines(a, {e.begin(), e.begin() + static_cast<std::ptrdiff_t>(cut)},
                             {e.begin() + static_cast<std::ptrdiff_t>(cut), e.end()}, r, bound);
    }
    if (cand && (!best || cand->union_size < best->union_size)) best = cand;
  }
  if (best) best->route = "direct_search";
  return best;
}

}  // namespace detail

/// Two progressions with one common step covering a two-dimensional set of small doubling.
inline TwoLinesCover two_lines_cover(const IntSet& a) {
  require(a.size() >= 11, ErrorCode::PreconditionFailed,
          "two_lines_cover needs |A| >= 11, got " + std::to_string(a.size()));
  const i64 k = static_cast<i64>(a.size());
  const i64 s = static_cast<i64>(int_sumset(a).size());
  require(3 * s <= 10 * k - 21, ErrorCode::PreconditionFailed,
          "two_lines_cover needs |2A| <= 10|A|/3 - 7, got |2A| = " + std::to_string(s));
  const auto dr = additive_dimension(a);
  require(dr.dim == 2, ErrorCode::PreconditionFailed,
          "two_lines_cover needs additive dimension 2, got " + std::to_string(dr.dim));
  const i64 bound = s - 2 * k + 3;
  if (auto t = detail::two_lines_by_embedding(a, dr, bound)) return *t;
  if (auto t = detail::two_lines_by_search(a, bound)) return *t;
  throw Error(ErrorCode::InternalConsistency, "no two-lines cover found for " + to_literal(a));
}

struct HigherDimWitness {
  bool applicable = false;  // projection rectifiable
  ResidueSet projection{2};
  std::vector<std::array<i64, 2>> points;  // (a, f(a mod m))
  i64 dim = 0;
};

/// If A mod m is rectifiable via f, then a -> (a, f(a mod m)) is an F2-isomorphism onto a
/// set off every line, so dim(A) >= 2.
inline HigherDimWitness lemma_higherdim_witness(const IntSet& a, i64 m) {
  require(a.size() >= 3, ErrorCode::PreconditionFailed, "needs |A| >= 3");
  require(is_normal_form(a), ErrorCode::PreconditionFailed, "needs A in normal form");
  require(m > 1, ErrorCode::PreconditionFailed, "needs m > 1");
  require(a.max() % m == 0, ErrorCode::PreconditionFailed, "needs m | max(A)");
  HigherDimWitness w;
  w.projection = ResidueSet::from_residues(m, a.elements());
  w.dim = additive_dimension(a).dim;
  if (!is_rectifiable(w.projection)) return w;
  w.applicable = true;
  const auto rect = rectify(w.projection);
  const auto residues = w.projection.elements();
  const auto at_zero = std::lower_bound(residues.begin(), residues.end(), 0) - residues.begin();
  const i64 shift = rect.values[static_cast<std::size_t>(at_zero)];
  std::vector<std::vector<i64>> pts;
  for (i64 x : a) {
    const auto idx = std::lower_bound(residues.begin(), residues.end(), mod_reduce(x, m)) - residues.begin();
    const i64 y = rect.values[static_cast<std::size_t>(idx)] - shift;
    w.points.push_back({x, y});
    pts.push_back({x, y});
  }
  std::vector<std::size_t> id(a.size());
  std::iota(id.begin(), id.end(), 0);
  require(is_F2_isomorphism(AdditiveSet::from(a), AdditiveSet::from_points(pts, 2), id),
          ErrorCode::InternalConsistency, "witness map is not an F2-isomorphism");
  require(w.dim >= 2, ErrorCode::InternalConsistency, "rectifiable projection but dim(A) < 2 for " + to_literal(a));
  return w;
}

}  // namespace addcomb
