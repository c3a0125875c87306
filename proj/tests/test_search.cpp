#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "addcomb/addcomb.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

nlohmann::json without_time(const SearchReport& r) {
  auto j = r.to_json();
  j.erase("wall_time_s");
  return j;
}

}  // namespace

TEST(Enumerate, Examples) {
  const auto c = enumerate_canonical(7, 3);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].elements(), (std::vector<i64>{0, 1, 2}));
  EXPECT_EQ(c[1].elements(), (std::vector<i64>{0, 1, 3}));
  EXPECT_EQ(enumerate_canonical(5, 2).size(), 1u);
  const auto capped = enumerate_canonical(7, 3, 5);
  ASSERT_EQ(capped.size(), 1u);
  EXPECT_EQ(capped[0].elements(), (std::vector<i64>{0, 1, 2}));
}

TEST(Enumerate, Errors) {
  expect_code(ErrorCode::PrimeRequired, [] { enumerate_canonical(9, 3); });
  expect_code(ErrorCode::RangeError, [] { enumerate_canonical(67, 3); });
}

TEST(Enumerate, BurnsideCountsUpTo13) {
  for (i64 p : {2, 3, 5, 7, 11, 13}) {
    for (i64 k = 1; k <= p; ++k) {
      ASSERT_EQ(static_cast<i64>(enumerate_canonical_masks(p, k).size()), oracle::burnside_classes(p, k)) << p << " " << k;
    }
  }
}

TEST(Enumerate, PrunedMatchesNaiveUpTo11) {
  for (i64 p : {5, 7, 11}) {
    for (i64 k = 1; k <= p; ++k) {
      for (i64 cap : {2 * k - 1, 2 * k + 1, 3 * k - 3, p}) {
        const auto naive = oracle::naive_classes(p, k, cap);
        const auto got = enumerate_canonical(p, k, cap);
        std::set<std::vector<i64>> mine;
        for (const auto& a : got) {
          ASSERT_EQ(affine_canonical_form(a), a);
          mine.insert(a.elements());
        }
        ASSERT_EQ(mine.size(), got.size());
        ASSERT_EQ(mine, naive) << p << " " << k << " " << cap;
      }
    }
  }
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  for (i64 p : {13, 17}) {
    for (i64 k : {4, 6}) {
      const auto one = enumerate_canonical_masks(p, k, kDoublingUncapped, 1);
      EXPECT_EQ(enumerate_canonical_masks(p, k, kDoublingUncapped, 3), one);
      EXPECT_EQ(enumerate_canonical_masks(p, k, kDoublingUncapped, 8), one);
    }
  }
}

TEST(Hunt, SmallPrimes) {
  const auto r = hunt_conjecture({3, 5, 7, 11, 13});
  EXPECT_TRUE(r.clean());
  EXPECT_EQ(r.summary.at("counterexamples"), 0);
  std::uint64_t expected = 0;
  for (i64 p : {3, 5, 7, 11, 13})
    for (i64 k = 1; k <= p; ++k) expected += static_cast<std::uint64_t>(oracle::burnside_classes(p, k));
  EXPECT_EQ(r.classes_examined, expected);
}

TEST(Hunt, CapAndPrimality) {
  expect_code(ErrorCode::RangeError, [] { hunt_conjecture({37}); });
  expect_code(ErrorCode::PrimeRequired, [] { hunt_conjecture({15}); });
}

TEST(Hunt, ReportsAreDeterministic) {
  const auto a = hunt_conjecture({7, 11}, {1});
  const auto b = hunt_conjecture({7, 11}, {4});
  EXPECT_EQ(without_time(a).dump(), without_time(b).dump());
}

TEST(Family, BuildExamples) {
  const auto e1 = build_family(FamilyParams::example1(5, 1));
  EXPECT_EQ(e1.set.modulus(), 11);
  EXPECT_EQ(e1.set.elements(), (std::vector<i64>{0, 3, 4, 5, 6}));
  EXPECT_EQ(e1.predicted_doubling, 10);

  const auto e2 = build_family(FamilyParams::example2(5));
  EXPECT_EQ(e2.set.modulus(), 19);
  EXPECT_EQ(e2.set.elements(), (std::vector<i64>{0, 1, 2, 3, 5, 10}));
  EXPECT_EQ(e2.predicted_doubling, 14);
  const auto c = min_ap_cover(e2.set);
  EXPECT_EQ(c.length, 11);
  EXPECT_EQ(c.bound, 9);

  expect_code(ErrorCode::InvalidParams, [] { FamilyParams::example2(4); });
  expect_code(ErrorCode::InvalidParams, [] { FamilyParams::example1(5, 3); });
  expect_code(ErrorCode::InvalidParams, [] { FamilyParams::example1(4, 1); });
}

TEST(Family, ParametersUpTo11) {
  const auto ps = family_parameters(Family::Example1, 11);
  std::set<std::pair<i64, i64>> kx;
  for (const auto& f : ps) kx.insert({f.k, f.x});
  EXPECT_TRUE(kx.count({5, 1}));
  EXPECT_TRUE(kx.count({6, 0}));
  const auto e = build_family(FamilyParams::example1(6, 0));
  EXPECT_EQ(e.set.elements(), (std::vector<i64>{0, 2, 3, 4, 5, 6}));
  for (const auto& f : ps) {
    EXPECT_EQ(f.p, 2 * f.k + 2 * f.x - 1);
    EXPECT_LE(f.x, f.k - 3);
  }
}

TEST(Family, Example2FindingsAtSmallT) {
  const auto r = verify_family(Family::Example2, 200);
  std::set<i64> flagged;
  for (const auto& f : r.findings) flagged.insert(f.at("t").get<i64>());
  EXPECT_TRUE(flagged.count(3));
  for (i64 t : flagged) EXPECT_LT(t, 5);
  expect_code(ErrorCode::RangeError, [] { verify_family(Family::Example2, 1001); });
}

TEST(Family, Example1DoublingFormulaHolds) {
  for (const auto& f : family_parameters(Family::Example1, 199)) {
    const auto inst = build_family(f);
    ASSERT_EQ(static_cast<i64>(oracle::sumset_mod(inst.set.elements(), f.p).size()), f.p - f.x);
  }
}

TEST(Suite, VosperSmall) {
  SuiteParams sp;
  sp.max_p = 11;
  const auto r = verify_theorem_suite("vosper", sp);
  EXPECT_TRUE(r.clean());
  EXPECT_GT(r.classes_examined, 0u);
}

TEST(Suite, DimBoundSmall) {
  SuiteParams sp;
  sp.max_element = 8;
  sp.max_size = 5;
  const auto r = verify_theorem_suite("dim_bound", sp);
  EXPECT_TRUE(r.clean());
  std::uint64_t count = 0;
  for_each_normal_form(8, 2, 5, [&](const std::vector<i64>&) { ++count; });
  EXPECT_EQ(r.classes_examined, count);
}

TEST(Suite, NormalFormEnumerationIsComplete) {
  std::set<std::vector<i64>> want;
  for (std::uint64_t m = 1; m < (1u << 9); m += 2) {
    std::vector<i64> el;
    i64 g = 0;
    for (i64 i = 0; i < 9; ++i)
      if ((m >> i) & 1) {
        el.push_back(i);
        g = std::gcd(g, i);
      }
    if (el.size() >= 2 && el.size() <= 5 && g == 1) want.insert(el);
  }
  std::set<std::vector<i64>> got;
  for_each_normal_form(8, 2, 5, [&](const std::vector<i64>& el) { got.insert(el); });
  EXPECT_EQ(got, want);
}

TEST(Suite, Prop23Small) {
  SuiteParams sp;
  sp.max_element = 14;
  const auto r = verify_theorem_suite("prop23", sp);
  EXPECT_TRUE(r.summary.contains("max_ratio"));
  EXPECT_LE(r.summary.at("max_ratio").get<double>(), 4.0);
}

TEST(Suite, Unknown) {
  expect_code(ErrorCode::UnknownSuite, [] { verify_theorem_suite("nope"); });
}

TEST(Report, WritesSelfContainedJson) {
  const auto dir = std::filesystem::temp_directory_path() / "addcomb_report_test";
  std::filesystem::remove_all(dir);
  const auto r = verify_family(Family::Example2, 11);
  const auto path = r.write(dir, "t");
  EXPECT_EQ(path.filename(), "family-t.json");
  std::ifstream is(path);
  const auto j = nlohmann::json::parse(is);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("tool_version"), kVersion);
  for (const auto& f : j.at("findings")) {
    const auto a = parse_residue_set(f.at("literal").get<std::string>());
    EXPECT_TRUE(min_ap_cover(a).within_bound);
  }
  std::filesystem::remove_all(dir);
}
