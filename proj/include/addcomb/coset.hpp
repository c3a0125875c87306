#pragma once

#include <vector>

#include "addcomb/covering.hpp"
#include "addcomb/residue_set.hpp"

namespace addcomb {

/// How a set sits over the cosets of the subgroup H of order subgroup_order.
struct CosetProfile {
  i64 subgroup_order = 1;
  i64 cosets_met = 0;
  i64 ap_of_cosets_length = 0;  // shortest AP of cosets (in Z_n / H) holding every coset met
  i64 heaviest_coset_count = 0; // max |A ∩ (H + c)|; the fill is this over subgroup_order
};

/// Cosets of H = (n/h) Z_n are the residue classes mod n/h.
inline CosetProfile coset_profile(const ResidueSet& a, i64 h_order) {
  const i64 n = a.modulus();
  require(h_order >= 1 && h_order < n && n % h_order == 0, ErrorCode::NotASubgroup,
          std::to_string(h_order) + " is not the order of a proper subgroup of Z_" + std::to_string(n));
  require(!a.empty(), ErrorCode::EmptySet, "coset profile of an empty set");
  const i64 m = n / h_order;
  std::vector<i64> per_coset(static_cast<std::size_t>(m), 0);
  a.for_each([&](i64 x) { ++per_coset[static_cast<std::size_t>(x % m)]; });

  CosetProfile prof;
  prof.subgroup_order = h_order;
  std::vector<i64> met;
  for (i64 c = 0; c < m; ++c) {
    const i64 cnt = per_coset[static_cast<std::size_t>(c)];
    if (cnt == 0) continue;
    met.push_back(c);
    prof.heaviest_coset_count = std::max(prof.heaviest_coset_count, cnt);
  }
  prof.cosets_met = static_cast<i64>(met.size());
  prof.ap_of_cosets_length = min_ap_cover_cyclic(ResidueSet::from_elements(m, met)).length;
  return prof;
}

struct DfCandidate {
  CosetProfile profile;
  int which_case = 0;              // 1: one coset; 2: two or >= 4 cosets; 3: three cosets
  bool inequality_holds = false;   // the covering inequality of the applicable case
  bool fill_clause_applies = false;  // l >= 2
  bool fill_clause_holds = true;     // some coset holds at least ceil(2|H|/3) elements
  bool satisfied = false;
};

struct DfReport {
  std::size_t size = 0;
  std::size_t doubling = 0;
  bool density_hypothesis = false;  // |A| <= n / 10^9; unsatisfiable at desk scale
  std::vector<DfCandidate> candidates;  // one per proper subgroup, by increasing order
  std::vector<i64> satisfying_orders;
  bool found() const noexcept { return !satisfying_orders.empty(); }
};

/// Evaluates the Deshouillers-Freiman conclusion for every proper subgroup.
inline DfReport df_conclusion_check(const ResidueSet& a) {
  require(!a.empty(), ErrorCode::EmptySet, "empty set");
  DfReport rep;
  rep.size = a.size();
  rep.doubling = sumset(a).size();
  const i64 k = static_cast<i64>(rep.size);
  const i64 s = static_cast<i64>(rep.doubling);
  require(100 * s <= 204 * k, ErrorCode::HypothesisNotMet,
          "|2A| = " + std::to_string(s) + " exceeds 2.04|A|");
  rep.density_hypothesis = static_cast<__int128>(k) * 1'000'000'000LL <= a.modulus();

  for (i64 h : divisors(a.modulus())) {
    if (h == a.modulus()) continue;
    DfCandidate c;
    c.profile = coset_profile(a, h);
    const i64 l = c.profile.ap_of_cosets_length;
    if (c.profile.cosets_met == 1) {
      c.which_case = 1;
      c.inequality_holds = static_cast<__int128>(k) * 1'000'000'000LL > h;
    } else if (c.profile.cosets_met == 3) {
      c.which_case = 3;
      c.inequality_holds = (std::min<i64>(l, 4) - 1) * h <= s - k;
    } else {
      c.which_case = 2;
      c.inequality_holds = (l - 1) * h <= s - k;
    }
    c.fill_clause_applies = l >= 2;
    c.fill_clause_holds = !c.fill_clause_applies || 3 * c.profile.heaviest_coset_count >= 2 * h;
    c.satisfied = c.inequality_holds && c.fill_clause_holds;
    if (c.satisfied) rep.satisfying_orders.push_back(h);
    rep.candidates.push_back(c);
  }
  return rep;
}

}  // namespace addcomb
