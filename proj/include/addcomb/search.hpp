#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "addcomb/covering.hpp"
#include "addcomb/freiman.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/residue_set.hpp"
#include "addcomb/serialize.hpp"
#include "addcomb/version.hpp"

namespace addcomb {

// ---------------------------------------------------------------------------
// Canonical enumeration over masks (p <= 64)

namespace masks {

inline u64 full(i64 p) { return p == 64 ? ~u64{0} : (u64{1} << p) - 1; }

inline u64 rotate(u64 m, i64 s, i64 p) {
  if (s == 0) return m;
  return ((m << s) | (m >> (p - s))) & full(p);
}

inline u64 sumset(u64 m, i64 p) {
  u64 acc = 0;
  for (u64 r = m; r; r &= r - 1) acc |= rotate(m, std::countr_zero(r), p);
  return acc;
}

inline ResidueSet to_set(u64 m, i64 p) { return ResidueSet::from_words(p, {m}); }

/// Lexicographic order of sorted element lists, for masks of equal popcount.
inline bool lex_less(u64 x, u64 y) {
  const u64 diff = x ^ y;
  return diff != 0 && (x & diff & (~diff + 1)) != 0;
}

}  // namespace masks

namespace detail {

/// Tables for the affine maps used by the canonicity test.
struct AffineTables {
  i64 p = 0;
  std::vector<i64> inv;
  std::vector<std::uint8_t> mul;  // mul[a * p + b] = a*b mod p

  explicit AffineTables(i64 prime) : p(prime), inv(static_cast<std::size_t>(prime), 0),
                                      mul(static_cast<std::size_t>(prime * prime)) {
    for (i64 a = 0; a < p; ++a) {
      for (i64 b = 0; b < p; ++b) mul[static_cast<std::size_t>(a * p + b)] = static_cast<std::uint8_t>(a * b % p);
    }
    for (i64 a = 1; a < p; ++a) inv[static_cast<std::size_t>(a)] = mod_inverse(a, p);
  }
};

/// True iff no affine image of m is lexicographically smaller. Only maps sending an ordered
/// pair of elements to (0, 1) can produce an image beginning 0, 1, which m itself does.
inline bool is_canonical(u64 m, const AffineTables& t) {
  const i64 p = t.p;
  std::vector<i64> el;
  for (u64 r = m; r; r &= r - 1) el.push_back(std::countr_zero(r));
  for (i64 a : el) {
    for (i64 b : el) {
      if (a == b) continue;
      const i64 d = t.inv[static_cast<std::size_t>(mod_reduce(b - a, p))];
      u64 img = 0;
      for (i64 x : el) img |= u64{1} << t.mul[static_cast<std::size_t>(d * p + mod_reduce(x - a, p))];
      if (masks::lex_less(img, m)) return false;
    }
  }
  return true;
}

}  // namespace detail

inline constexpr i64 kDoublingUncapped = std::numeric_limits<i64>::max();

/// One representative (the lexicographically least affine image) of every affine class of
/// k-subsets of Z_p with |2A| <= cap, as bit masks, in lexicographic order. Prefixes whose
/// partial sumset already exceeds the cap are pruned; sumsets only grow, so nothing is lost.
inline std::vector<u64> enumerate_canonical_masks(i64 p, i64 k, i64 cap = kDoublingUncapped, unsigned threads = 1) {
  require(is_prime(static_cast<u64>(p)), ErrorCode::PrimeRequired, "enumerate_canonical needs a prime modulus");
  require(p <= 64, ErrorCode::RangeError, "enumerate_canonical supports p <= 64");
  require(k >= 1 && k <= p, ErrorCode::InvalidParams, "cardinality out of range");
  if (k == 1) return cap >= 1 ? std::vector<u64>{1} : std::vector<u64>{};
  const detail::AffineTables tables(p);
  const u64 base = 0b11;
  const u64 base2 = masks::sumset(base, p);
  if (std::popcount(base2) > cap) return {};
  if (k == 2) return {base};

  // Subtrees are indexed by the third element.
  const i64 first_third = 2;
  const i64 last_third = p - (k - 2);
  const auto n_sub = static_cast<std::size_t>(std::max<i64>(0, last_third - first_third + 1));
  std::vector<std::vector<u64>> per(n_sub);
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (std::size_t s = next++; s < n_sub; s = next++) {
      auto& out = per[s];
      auto dfs = [&](auto&& self, u64 m, u64 m2, i64 last, i64 size) -> void {
        if (size == k) {
          if (detail::is_canonical(m, tables)) out.push_back(m);
          return;
        }
        for (i64 x = last + 1; x <= p - (k - size); ++x) {
          const u64 nm = m | (u64{1} << x);
          const u64 n2 = m2 | masks::rotate(m, x, p) | (u64{1} << (2 * x % p));
          if (std::popcount(n2) > cap) continue;
          self(self, nm, n2, x, size + 1);
        }
      };
      const i64 x = first_third + static_cast<i64>(s);
      const u64 nm = base | (u64{1} << x);
      const u64 n2 = base2 | masks::rotate(base, x, p) | (u64{1} << (2 * x % p));
      if (std::popcount(n2) <= cap) dfs(dfs, nm, n2, x, 3);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::vector<u64> all;
  for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
  return all;
}

inline std::vector<ResidueSet> enumerate_canonical(i64 p, i64 k, i64 cap = kDoublingUncapped, unsigned threads = 1) {
  std::vector<ResidueSet> out;
  for (u64 m : enumerate_canonical_masks(p, k, cap, threads)) out.push_back(masks::to_set(m, p));
  return out;
}

// ---------------------------------------------------------------------------
// Reports

inline constexpr int kReportSchemaVersion = 1;

struct SearchReport {
  std::string campaign;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t classes_examined = 0;
  std::vector<nlohmann::json> findings;  // counterexamples or violations, each with a "literal"
  nlohmann::json summary = nlohmann::json::object();
  double wall_time_s = 0.0;

  bool clean() const noexcept { return findings.empty(); }

  nlohmann::json to_json() const {
    return {{"schema_version", kReportSchemaVersion},
            {"tool_version", std::string(kVersion)},
            {"campaign", campaign},
            {"parameters", parameters},
            {"classes_examined", classes_examined},
            {"findings", findings},
            {"summary", summary},
            {"wall_time_s", wall_time_s}};
  }

  /// reports/<campaign>-<tag>.json under dir; returns the path written.
  std::filesystem::path write(const std::filesystem::path& dir, const std::string& tag) const {
    std::filesystem::create_directories(dir);
    const auto path = dir / (campaign + "-" + tag + ".json");
    std::ofstream os(path);
    require(static_cast<bool>(os), ErrorCode::InvalidParams, "cannot write report " + path.string());
    os << to_json().dump(2) << '\n';
    return path;
  }
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Conjecture hunt

inline constexpr i64 kHuntDefaultMaxP = 31;
inline const std::vector<i64> kHuntDefaultPrimes{5, 7, 11, 13, 17, 19, 23};

struct HuntOptions {
  unsigned threads = 1;
  i64 max_p = kHuntDefaultMaxP;
};

inline SearchReport hunt_conjecture(const std::vector<i64>& primes, const HuntOptions& opt = {}) {
  detail::Stopwatch clock;
  SearchReport rep;
  rep.campaign = "hunt";
  rep.parameters = {{"primes", primes}, {"cardinalities", "all"}, {"doubling_cap", nullptr}};
  nlohmann::json per_p = nlohmann::json::array();
  for (i64 p : primes) {
    require(is_prime(static_cast<u64>(p)), ErrorCode::PrimeRequired, "hunt needs primes");
    require(p <= opt.max_p, ErrorCode::RangeError,
            "p = " + std::to_string(p) + " exceeds the hunt cap " + std::to_string(opt.max_p));
    std::uint64_t classes = 0, consistent = 0, silent = 0;
    for (i64 k = 1; k <= p; ++k) {
      for (u64 m : enumerate_canonical_masks(p, k, kDoublingUncapped, opt.threads)) {
        ++classes;
        const ResidueSet a = masks::to_set(m, p);
        const auto v = conjecture_verdict(a);
        if (v.status == ConjectureStatus::Consistent) ++consistent;
        if (v.status == ConjectureStatus::Silent) ++silent;
        if (v.status == ConjectureStatus::Counterexample) {
          rep.findings.push_back({{"literal", to_literal(a)}, {"verdict", to_json(v)}});
        }
      }
    }
    rep.classes_examined += classes;
    per_p.push_back({{"p", p}, {"classes", classes}, {"consistent", consistent}, {"silent", silent}});
  }
  rep.summary = {{"per_prime", per_p}, {"counterexamples", rep.findings.size()}};
  rep.wall_time_s = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// Extremal families

enum class Family { Example1, Example2 };

constexpr std::string_view to_string(Family f) { return f == Family::Example1 ? "example1" : "example2"; }

struct FamilyParams {
  Family family = Family::Example1;
  i64 k = 0;  // Example1
  i64 x = 0;  // Example1
  i64 t = 0;  // Example2
  i64 p = 0;  // derived

  static FamilyParams example1(i64 k, i64 x) {
    require(k >= 3 && x >= 0 && x <= k - 3, ErrorCode::InvalidParams, "Example 1 needs k >= 3 and 0 <= x <= k - 3");
    FamilyParams f{Family::Example1, k, x, 0, 2 * k + 2 * x - 1};
    require(is_prime(static_cast<u64>(f.p)), ErrorCode::InvalidParams,
            "p = 2k + 2x - 1 = " + std::to_string(f.p) + " is not prime");
    return f;
  }

  static FamilyParams example2(i64 t) {
    require(t >= 2, ErrorCode::InvalidParams, "Example 2 needs t >= 2");
    FamilyParams f{Family::Example2, 0, 0, t, 4 * t - 1};
    require(is_prime(static_cast<u64>(f.p)), ErrorCode::InvalidParams,
            "p = 4t - 1 = " + std::to_string(f.p) + " is not prime");
    return f;
  }
};

struct FamilyInstance {
  FamilyParams params;
  ResidueSet set{2};
  i64 predicted_size = 0;
  i64 predicted_doubling = 0;
  i64 predicted_bound = 0;
};

/// Builds the set and checks its size and doubling against the closed forms.
inline FamilyInstance build_family(const FamilyParams& f) {
  FamilyInstance inst;
  inst.params = f;
  std::vector<i64> el;
  if (f.family == Family::Example1) {
    el.push_back(0);
    for (i64 v = f.x + 2; v <= (f.p + 1) / 2; ++v) el.push_back(v);
    inst.predicted_size = f.k;
    inst.predicted_doubling = f.p - f.x;
  } else {
    for (i64 v = 0; v <= f.t; ++v) {
      if (v != f.t - 1) el.push_back(v);
    }
    el.push_back(2 * f.t);
    inst.predicted_size = f.t + 1;
    inst.predicted_doubling = 3 * f.t - 1;
  }
  inst.set = ResidueSet::from_elements(f.p, el);
  inst.predicted_bound = inst.predicted_doubling - inst.predicted_size + 1;
  require(static_cast<i64>(inst.set.size()) == inst.predicted_size, ErrorCode::InternalConsistency,
          "family size differs from its closed form");
  const i64 s = static_cast<i64>(sumset(inst.set).size());
  require(s == inst.predicted_doubling, ErrorCode::InternalConsistency,
          "family doubling " + std::to_string(s) + " differs from the closed form " +
              std::to_string(inst.predicted_doubling));
  return inst;
}

/// Every valid parameter choice with p <= max_p.
inline std::vector<FamilyParams> family_parameters(Family family, i64 max_p) {
  std::vector<FamilyParams> out;
  if (family == Family::Example1) {
    for (i64 p = 5; p <= max_p; ++p) {
      if (!is_prime(static_cast<u64>(p))) continue;
      for (i64 x = 0; 2 * x + 5 <= p; ++x) {
        const i64 k = (p + 1) / 2 - x;
        if (x <= k - 3) out.push_back(FamilyParams::example1(k, x));
      }
    }
  } else {
    for (i64 t = 2; 4 * t - 1 <= max_p; ++t) {
      if (is_prime(static_cast<u64>(4 * t - 1))) out.push_back(FamilyParams::example2(t));
    }
  }
  return out;
}

inline nlohmann::json family_params_json(const FamilyParams& f) {
  if (f.family == Family::Example1) return {{"family", "example1"}, {"k", f.k}, {"x", f.x}, {"p", f.p}};
  return {{"family", "example2"}, {"t", f.t}, {"p", f.p}};
}

/// Checks the closed-form doubling and the claim l(A) > |2A| - |A| + 1 on every instance.
inline SearchReport verify_family(Family family, i64 max_p) {
  require(max_p <= 1000, ErrorCode::RangeError, "verify_family supports max_p <= 1000");
  detail::Stopwatch clock;
  SearchReport rep;
  rep.campaign = "family";
  rep.parameters = {{"family", to_string(family)}, {"max_p", max_p}};
  nlohmann::json confirmed = nlohmann::json::array();
  for (const auto& f : family_parameters(family, max_p)) {
    const auto inst = build_family(f);
    const auto cover = min_ap_cover(inst.set);
    ++rep.classes_examined;
    nlohmann::json row = family_params_json(f);
    row["literal"] = to_literal(inst.set);
    row["doubling"] = inst.predicted_doubling;
    row["cover"] = to_json(cover);
    if (cover.within_bound) {
      row["violation"] = "coverable within |2A| - |A| + 1";
      rep.findings.push_back(row);
    } else {
      confirmed.push_back(family_params_json(f));
    }
  }
  rep.summary = {{"instances", rep.classes_examined}, {"confirmed", confirmed.size()},
                 {"violations", rep.findings.size()}};
  rep.wall_time_s = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem suites

struct SuiteParams {
  i64 max_p = 17;          // vosper
  i64 max_element = -1;    // dim_bound 12, 3k4 15, prop23 24 when negative
  i64 max_size = 6;        // dim_bound
  unsigned threads = 1;
};

/// Calls f on every normal-form set (0 in A, gcd 1) inside [0, max_element] with
/// min_size <= |A| <= max_size, children after parents in increasing lexicographic order.
inline void for_each_normal_form(i64 max_element, i64 min_size, i64 max_size,
                                 const std::function<void(const std::vector<i64>&)>& f) {
  std::vector<i64> cur{0};
  auto rec = [&](auto&& self, i64 g) -> void {
    const auto size = static_cast<i64>(cur.size());
    if (size >= min_size && (g == 1 || (size == 1 && min_size <= 1))) f(cur);
    if (size == max_size) return;
    for (i64 x = cur.back() + 1; x <= max_element; ++x) {
      cur.push_back(x);
      self(self, std::gcd(g, x));
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

inline SearchReport verify_theorem_suite(const std::string& name, SuiteParams params = {}) {
  detail::Stopwatch clock;
  SearchReport rep;
  rep.campaign = "suite-" + name;
  if (name == "vosper") {
    rep.parameters = {{"max_p", params.max_p}};
    std::uint64_t critical = 0;
    for (i64 p : primes_up_to(params.max_p)) {
      for (i64 k = 2; k <= p; ++k) {
        for (u64 m : enumerate_canonical_masks(p, k, p - 2, params.threads)) {
          const ResidueSet a = masks::to_set(m, p);
          ++rep.classes_examined;
          try {
            critical += vosper_verdict(a).critical ? 1 : 0;
          } catch (const Error& e) {
            rep.findings.push_back({{"literal", to_literal(a)}, {"error", e.what()}});
          }
        }
      }
    }
    rep.summary = {{"critical_sets", critical}, {"violations", rep.findings.size()}};
  } else if (name == "dim_bound") {
    const i64 m = params.max_element < 0 ? 12 : params.max_element;
    rep.parameters = {{"max_element", m}, {"min_size", 2}, {"max_size", params.max_size}};
    std::uint64_t tight = 0;
    for_each_normal_form(m, 2, params.max_size, [&](const std::vector<i64>& el) {
      const IntSet a = IntSet::from_elements(el);
      const auto r = dimension_lower_bound_check(a);
      ++rep.classes_examined;
      tight += r.doubling == r.rhs ? 1 : 0;
      if (!r.holds) {
        rep.findings.push_back({{"literal", to_literal(a)}, {"dim", r.dim}, {"doubling", r.doubling}, {"rhs", r.rhs}});
      }
    });
    rep.summary = {{"tight", tight}, {"violations", rep.findings.size()}};
  } else if (name == "3k4") {
    const i64 m = params.max_element < 0 ? 15 : params.max_element;
    rep.parameters = {{"max_element", m}};
    std::uint64_t in_range = 0;
    for_each_normal_form(m, 1, m + 1, [&](const std::vector<i64>& el) {
      const IntSet a = IntSet::from_elements(el);
      ++rep.classes_examined;
      const i64 k = static_cast<i64>(a.size());
      const i64 s = static_cast<i64>(int_sumset(a).size());
      if (s > 3 * k - 4) return;
      ++in_range;
      if (a.max() > s - k) rep.findings.push_back({{"literal", to_literal(a)}, {"doubling", s}});
    });
    rep.summary = {{"hypothesis_met", in_range}, {"violations", rep.findings.size()}};
  } else if (name == "prop23") {
    const i64 m = params.max_element < 0 ? 24 : params.max_element;
    require(m <= 31, ErrorCode::RangeError, "prop23 suite supports max_element <= 31");
    rep.parameters = {{"max_element", m}, {"min_size", 3}, {"doubling", "|2A| <= 3.04|A| - 3"}, {"claim", "max(A) <= 4|A|"}};
    // Incremental masks: adding x above every element adds A + x and 2x to 2A. A dimension
    // is computed only when the set could exceed 4|A| or beat the best ratio so far.
    std::uint64_t dimension_checks = 0;
    double best_ratio = 0.0;
    std::string best_literal;
    auto dfs = [&](auto&& self, u64 a, u64 a2, i64 top, i64 k, i64 g) -> void {
      if (k >= 3 && g == 1 && 100 * std::popcount(a2) <= 304 * k - 300) {
        ++rep.classes_examined;
        const double ratio = static_cast<double>(top) / static_cast<double>(k);
        const bool may_violate = top > 4 * k;
        if (may_violate || ratio > best_ratio) {
          std::vector<i64> el;
          for (u64 r = a; r; r &= r - 1) el.push_back(std::countr_zero(r));
          const IntSet s = IntSet::from_elements(el);
          ++dimension_checks;
          if (additive_dimension(s).dim == 1) {
            if (ratio > best_ratio) {
              best_ratio = ratio;
              best_literal = to_literal(s);
            }
            if (may_violate) rep.findings.push_back({{"literal", to_literal(s)}, {"max_over_size", ratio}});
          }
        }
      }
      for (i64 x = top + 1; x <= m; ++x) {
        self(self, a | (u64{1} << x), a2 | (a << x) | (u64{1} << (2 * x)), x, k + 1, std::gcd(g, x));
      }
    };
    dfs(dfs, 1, 1, 0, 1, 0);
    rep.summary = {{"dimension_checks", dimension_checks}, {"max_ratio", best_ratio}, {"max_ratio_set", best_literal},
                   {"exceeding_4", rep.findings.size()}};
  } else {
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "' (vosper, dim_bound, 3k4, prop23)");
  }
  rep.wall_time_s = clock.seconds();
  return rep;
}

}  // namespace addcomb
