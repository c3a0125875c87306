#include <gtest/gtest.h>

#include <random>

#include "addcomb/addcomb.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

ResidueSet rs(i64 n, std::initializer_list<i64> el) { return ResidueSet::from_elements(n, el); }

std::vector<i64> v(std::initializer_list<i64> el) { return el; }

}  // namespace

TEST(ResidueSet, InvariantsAndPrimeCache) {
  const auto a = rs(12, {0, 5, 11});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_FALSE(a.prime_modulus());
  EXPECT_TRUE(rs(13, {1}).prime_modulus());
  EXPECT_TRUE(ResidueSet(65537).prime_modulus());
  EXPECT_EQ(rs(7, {-1, 8}).elements(), v({1, 6}));
  EXPECT_TRUE(ResidueSet::full(70).is_full());
  EXPECT_EQ(ResidueSet::full(70).size(), 70u);
}

TEST(ResidueSet, DuplicateResidueRejected) {
  try {
    rs(7, {1, 8});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Sumset, Examples) {
  const auto s = sumset(rs(11, {0, 3, 4, 5, 6}));
  EXPECT_EQ(s.size(), 10u);
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(sumset(rs(7, {0})).elements(), v({0}));
  EXPECT_EQ(sumset(rs(11, {0, 1, 3, 6})).elements(), v({0, 1, 2, 3, 4, 6, 7, 9}));
}

TEST(Sumset, EmptyInputIsAnError) {
  try {
    sumset(ResidueSet(7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySet);
  }
}

TEST(Sumset, ShiftOrMatchesNaiveOnRandomInstances) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 1000; ++it) {
    const i64 n = std::uniform_int_distribution<i64>(2, 512)(rng);
    const i64 k = std::uniform_int_distribution<i64>(1, std::min<i64>(n, 40))(rng);
    const auto el = oracle::random_subset(rng, n, k);
    const auto a = ResidueSet::from_elements(n, el);
    ASSERT_EQ(sumset_shift_or(a, a).elements(), oracle::sumset_mod(el, n)) << to_literal(a);
  }
}

TEST(Sumset, NttMatchesShiftOr) {
  std::mt19937_64 rng(12);
  for (i64 n : {i64{65537}, i64{70001}, i64{100000}}) {
    for (i64 k : {1, 30, 2000}) {
      const auto a = ResidueSet::from_elements(n, oracle::random_subset(rng, n, k));
      EXPECT_EQ(sumset_ntt(a, a), sumset_shift_or(a, a)) << n << " " << k;
    }
  }
  const auto small = rs(301, {0, 7, 150, 300});
  EXPECT_EQ(sumset_ntt(small, small), sumset_shift_or(small, small));
}

TEST(Sumset, CauchyDavenportAndEquivariance) {
  std::mt19937_64 rng(13);
  const std::vector<i64> primes{3, 5, 7, 11, 13, 31, 61, 101, 257, 499};
  for (int it = 0; it < 500; ++it) {
    const i64 p = primes[static_cast<std::size_t>(it) % primes.size()];
    const i64 k = std::uniform_int_distribution<i64>(1, p)(rng);
    const auto a = ResidueSet::from_elements(p, oracle::random_subset(rng, p, k));
    const auto s = sumset(a);
    ASSERT_GE(static_cast<i64>(s.size()), std::min(p, 2 * k - 1));
    const i64 d = std::uniform_int_distribution<i64>(1, p - 1)(rng);
    const i64 u = std::uniform_int_distribution<i64>(0, p - 1)(rng);
    ASSERT_EQ(sumset(dilate(a, d)), dilate(s, d));
    ASSERT_EQ(sumset(translate(a, u)), translate(s, 2 * u));
  }
}

TEST(Dilate, Examples) {
  EXPECT_EQ(dilate(rs(11, {0, 3, 4, 5, 6}), 4).elements(), v({0, 1, 2, 5, 9}));
  EXPECT_EQ(dilate(rs(11, {0, 1, 3, 6}), 4).elements(), v({0, 1, 2, 4}));
  const auto a = rs(12, {1, 5, 6});
  EXPECT_EQ(dilate(a, 1), a);
}

TEST(Dilate, NonUnitRejected) {
  try {
    dilate(rs(12, {1, 2}), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonUnitDilation);
  }
}

TEST(Translate, ExamplesAndRoundTrip) {
  EXPECT_EQ(translate(rs(7, {0, 1}), 3).elements(), v({3, 4}));
  EXPECT_EQ(negate(rs(7, {1, 2})).elements(), v({5, 6}));
  EXPECT_EQ(negate(rs(7, {0})).elements(), v({0}));
  const auto a = rs(20, {0, 3, 19});
  EXPECT_EQ(translate(translate(a, 6), 20 - 6), a);
}

TEST(CanonicalForm, Examples) {
  EXPECT_EQ(affine_canonical_form(rs(7, {3, 4, 5})).elements(), v({0, 1, 2}));
  EXPECT_EQ(affine_canonical_form(rs(7, {0, 1, 3})).elements(), v({0, 1, 3}));
  for (i64 x = 0; x < 5; ++x)
    for (i64 y = x + 1; y < 5; ++y) EXPECT_EQ(affine_canonical_form(rs(5, {x, y})).elements(), v({0, 1}));
}

TEST(CanonicalForm, CompositeRejected) {
  try {
    affine_canonical_form(rs(9, {0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrimeRequired);
  }
}

TEST(CanonicalForm, ConstantOnOrbitsAndMatchesOracle) {
  std::mt19937_64 rng(14);
  const std::vector<i64> primes{5, 7, 11, 13, 17, 23, 31, 61};
  for (int it = 0; it < 1000; ++it) {
    const i64 p = primes[static_cast<std::size_t>(it) % primes.size()];
    const i64 k = std::uniform_int_distribution<i64>(1, p)(rng);
    const auto el = oracle::random_subset(rng, p, k);
    const auto a = ResidueSet::from_elements(p, el);
    const i64 d = std::uniform_int_distribution<i64>(1, p - 1)(rng);
    const i64 u = std::uniform_int_distribution<i64>(0, p - 1)(rng);
    const auto c = affine_canonical_form(a);
    ASSERT_EQ(affine_canonical_form(affine_image(a, d, u)), c);
    ASSERT_EQ(affine_canonical_form(c), c);
    if (p <= 23) { ASSERT_EQ(c.elements(), oracle::canonical(el, p)); }
  }
}

TEST(CosetProfile, Examples) {
  auto c = coset_profile(rs(12, {0, 1, 4, 5}), 3);
  EXPECT_EQ(c.cosets_met, 2);
  EXPECT_EQ(c.ap_of_cosets_length, 2);
  c = coset_profile(rs(12, {0, 4, 8}), 3);
  EXPECT_EQ(c.cosets_met, 1);
  EXPECT_EQ(c.ap_of_cosets_length, 1);
  EXPECT_EQ(c.heaviest_coset_count, 3);
  c = coset_profile(rs(12, {0, 1, 2}), 4);
  EXPECT_EQ(c.cosets_met, 3);
  EXPECT_EQ(c.ap_of_cosets_length, 3);
}

TEST(CosetProfile, NonDivisorRejected) {
  for (i64 h : {5, 12, 0}) {
    try {
      coset_profile(rs(12, {0}), h);
      FAIL() << h;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotASubgroup);
    }
  }
}

TEST(CosetProfile, AgreesWithDirectPartition) {
  std::mt19937_64 rng(15);
  for (int it = 0; it < 200; ++it) {
    const i64 n = std::uniform_int_distribution<i64>(4, 60)(rng);
    const auto divs = divisors(n);
    const i64 h = divs[std::uniform_int_distribution<std::size_t>(0, divs.size() - 2)(rng)];
    const auto el = oracle::random_subset(rng, n, std::uniform_int_distribution<i64>(1, n)(rng));
    const auto prof = coset_profile(ResidueSet::from_elements(n, el), h);
    const i64 m = n / h;
    std::map<i64, i64> per;
    for (i64 x : el) ++per[x % m];
    i64 heavy = 0;
    for (auto [c, cnt] : per) heavy = std::max(heavy, cnt);
    std::vector<i64> met;
    for (auto [c, cnt] : per) met.push_back(c);
    ASSERT_EQ(prof.cosets_met, static_cast<i64>(per.size()));
    ASSERT_EQ(prof.heaviest_coset_count, heavy);
    ASSERT_LE(prof.cosets_met, std::min<i64>(m, static_cast<i64>(el.size())));
    ASSERT_GE(prof.ap_of_cosets_length, prof.cosets_met);
    // Quotient cover by brute force over every (start, step) of Z_m.
    i64 best = m;
    for (i64 len = static_cast<i64>(met.size()); len <= m && best == m; ++len)
      for (i64 step = 1; step < m; ++step)
        for (i64 start = 0; start < m; ++start) {
          std::set<i64> ap;
          for (i64 i = 0; i < len; ++i) ap.insert((start + i * step) % m);
          if (static_cast<i64>(ap.size()) == len && std::includes(ap.begin(), ap.end(), met.begin(), met.end()))
            best = std::min(best, len);
        }
    ASSERT_EQ(prof.ap_of_cosets_length, best) << n << " " << h;
  }
}

TEST(DfConclusion, Examples) {
  const auto sub = df_conclusion_check(rs(12, {0, 4, 8}));
  EXPECT_NE(std::find(sub.satisfying_orders.begin(), sub.satisfying_orders.end(), 3), sub.satisfying_orders.end());
  EXPECT_FALSE(sub.density_hypothesis);

  const auto iv = df_conclusion_check(rs(15, {0, 1, 2, 3}));
  EXPECT_EQ(iv.doubling, 7u);
  const auto& trivial = iv.candidates.front();
  EXPECT_EQ(trivial.profile.subgroup_order, 1);
  EXPECT_EQ(trivial.which_case, 2);
  EXPECT_EQ(trivial.profile.ap_of_cosets_length, 4);
  EXPECT_TRUE(trivial.inequality_holds);

  try {
    df_conclusion_check(rs(15, {0, 1, 3, 7}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisNotMet);
  }
}

TEST(DfConclusion, FillClauseUsesCeilingOfTwoThirds) {
  // H of order 3 in Z_12; one full coset and one with 2 elements: 3 >= ceil(2) holds.
  const auto r = df_conclusion_check(rs(12, {0, 4, 8, 1, 5}));
  for (const auto& c : r.candidates) {
    if (c.profile.subgroup_order != 3) continue;
    EXPECT_TRUE(c.fill_clause_applies);
    EXPECT_TRUE(c.fill_clause_holds);
  }
}
