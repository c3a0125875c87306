#include <gtest/gtest.h>

#include <random>

#include "addcomb/addcomb.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

IntSet is(std::initializer_list<i64> el) { return IntSet::from_elements(el); }
ResidueSet rs(i64 n, std::initializer_list<i64> el) { return ResidueSet::from_elements(n, el); }

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

oracle::Group group_of(const AdditiveSet& a) { return {a.points, a.moduli}; }

/// Rectifiable iff no forbidden functional e_a + e_b - e_c - e_e lies in the row space of
/// the required ones (rank comparison over Q).
bool rectifiable_by_rank(const oracle::Group& g) {
  const std::size_t k = g.pts.size();
  std::vector<std::vector<oracle::Rat>> req;
  std::vector<std::vector<oracle::Rat>> forb;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) pairs.push_back({i, j});
  for (std::size_t x = 0; x < pairs.size(); ++x)
    for (std::size_t y = x + 1; y < pairs.size(); ++y) {
      std::vector<oracle::Rat> row(k, 0);
      row[pairs[x].first] += 1;
      row[pairs[x].second] += 1;
      row[pairs[y].first] -= 1;
      row[pairs[y].second] -= 1;
      const bool equal = g.add(pairs[x].first, pairs[x].second) == g.add(pairs[y].first, pairs[y].second);
      (equal ? req : forb).push_back(row);
    }
  const std::size_t base = req.empty() ? 0 : oracle::rank(req);
  for (const auto& f : forb) {
    auto m = req;
    m.push_back(f);
    if (oracle::rank(m) == base) return false;
  }
  return true;
}

void check_two_lines(const IntSet& a, const TwoLinesCover& t) {
  const i64 k = static_cast<i64>(a.size());
  const i64 s = static_cast<i64>(oracle::sumset_int(a.elements()).size());
  ASSERT_EQ(t.p1.step, t.p2.step);
  std::set<i64> u;
  for (const auto& ap : {t.p1, t.p2})
    for (i64 x : ap.elements()) u.insert(x);
  for (i64 x : a) ASSERT_TRUE(u.count(x)) << x;
  ASSERT_EQ(static_cast<i64>(u.size()), t.union_size);
  ASSERT_LE(t.p1.length + t.p2.length, s - 2 * k + 3);
  ASSERT_LE(static_cast<i64>(u.size()), s - 2 * k + 3);
  auto sums = [](const ApDescriptor& x, const ApDescriptor& y) {
    std::set<i64> out;
    for (i64 p : x.elements())
      for (i64 q : y.elements()) out.insert(p + q);
    return out;
  };
  const auto s11 = sums(t.p1, t.p1), s12 = sums(t.p1, t.p2), s22 = sums(t.p2, t.p2);
  for (i64 x : s11) ASSERT_FALSE(s12.count(x) || s22.count(x));
  for (i64 x : s12) ASSERT_FALSE(s22.count(x));
}

}  // namespace

TEST(RelationSystem, PartitionAndTrivialSolutions) {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 100; ++it) {
    const auto el = oracle::random_subset(rng, 25, std::uniform_int_distribution<i64>(2, 8)(rng));
    const RelationSystem rsys(AdditiveSet::from(IntSet::from_elements(el)));
    const std::size_t pairs = el.size() * (el.size() + 1) / 2;
    ASSERT_EQ(rsys.required_count() + rsys.forbidden_count(), pairs * (pairs - 1) / 2);
    const auto req = rsys.required();
    ASSERT_EQ(req.size(), rsys.required_count());
    for (const auto& q : req) {
      ASSERT_LE(q.a, q.b);
      ASSERT_LE(q.c, q.e);
      ASSERT_TRUE(std::tie(q.a, q.b) < std::tie(q.c, q.e));
      ASSERT_EQ(el[q.a] + el[q.b], el[q.c] + el[q.e]);
      BigInt on_const = 0, on_id = 0;
      const auto row = rsys.row(q);
      for (std::size_t i = 0; i < el.size(); ++i) {
        on_const += row[i];
        on_id += row[i] * el[i];
      }
      ASSERT_EQ(on_const, 0);
      ASSERT_EQ(on_id, 0);
    }
  }
}

TEST(AdditiveDimension, Examples) {
  EXPECT_EQ(additive_dimension(is({0, 1, 2, 3})).dim, 1);
  EXPECT_EQ(additive_dimension(is({0, 1, 10, 11})).dim, 2);
  EXPECT_EQ(additive_dimension(is({0, 1, 3, 7})).dim, 3);
  expect_code(ErrorCode::Undefined, [] { additive_dimension(is({4})); });
  const auto square = AdditiveSet::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 2);
  EXPECT_EQ(additive_dimension(square).dim, 2);
}

TEST(AdditiveDimension, RoutesAgreeWithRankOracle) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 300; ++it) {
    const i64 k = std::uniform_int_distribution<i64>(2, 9)(rng);
    const auto el = oracle::random_subset(rng, std::uniform_int_distribution<i64>(k, 30)(rng), k);
    const auto a = IntSet::from_elements(el);
    const auto prop = additive_dimension(a, NullspaceRoute::Propagation);
    const auto dense = additive_dimension(a, NullspaceRoute::Dense);
    ASSERT_EQ(prop.dim, oracle::dimension(oracle::integers(el))) << to_literal(a);
    ASSERT_EQ(prop.nullspace_basis, dense.nullspace_basis) << to_literal(a);
    ASSERT_GE(prop.dim, 1);
    ASSERT_LE(prop.dim, k - 1);
  }
  for (int it = 0; it < 100; ++it) {
    const i64 n = std::uniform_int_distribution<i64>(3, 30)(rng);
    const auto el = oracle::random_subset(rng, n, std::uniform_int_distribution<i64>(2, std::min<i64>(n, 7))(rng));
    const auto a = AdditiveSet::from(ResidueSet::from_elements(n, el));
    ASSERT_EQ(additive_dimension(a).dim, oracle::dimension(oracle::residues(el, n)));
    ASSERT_EQ(additive_dimension(a).nullspace_basis, additive_dimension(a, NullspaceRoute::Dense).nullspace_basis);
  }
}

TEST(AdditiveDimension, BasisSolvesEveryRequiredQuadruple) {
  const auto a = is({0, 1, 2, 5, 9, 10, 11});
  const RelationSystem rsys(AdditiveSet::from(a));
  for (const auto& b : additive_dimension(a).nullspace_basis)
    for (const auto& q : rsys.required()) ASSERT_EQ(b[q.a] + b[q.b], b[q.c] + b[q.e]);
}

TEST(AdditiveDimension, AffineAndIsomorphismInvariance) {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 200; ++it) {
    const auto el = oracle::random_subset(rng, 20, std::uniform_int_distribution<i64>(2, 8)(rng));
    const i64 d = std::uniform_int_distribution<i64>(1, 7)(rng) * (it % 2 ? -1 : 1);
    const i64 u = std::uniform_int_distribution<i64>(-40, 40)(rng);
    std::vector<i64> img;
    for (i64 x : el) img.push_back(d * x + u);
    const auto a = IntSet::from_elements(el);
    const auto b = IntSet::from_elements(img);
    ASSERT_EQ(additive_dimension(a).dim, additive_dimension(b).dim);
    // A Z_n image of an integer set lying in a short interval is isomorphic to it.
    const i64 n = 2 * (a.max() - a.min()) + 3;
    ASSERT_EQ(additive_dimension(AdditiveSet::from(ResidueSet::from_elements(n, el))).dim, additive_dimension(a).dim);
  }
}

TEST(AdditiveDimension, ProgressionsAndSidonSetsExhaustive) {
  for_each_normal_form(12, 2, 5, [&](const std::vector<i64>& el) {
    const i64 k = static_cast<i64>(el.size());
    const i64 dim = additive_dimension(IntSet::from_elements(el)).dim;
    if (oracle::is_ap(el)) { ASSERT_EQ(dim, 1); }
    ASSERT_EQ(oracle::is_sidon(el), dim == k - 1) << to_literal(IntSet::from_elements(el));
  });
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(is_F2_isomorphic(is({0, 1, 2}), is({5, 9, 13})));
  EXPECT_FALSE(is_F2_isomorphic(is({0, 1, 2}), is({0, 1, 3})));
  // 0 + 1 = 3 + 3 in Z_5 matches 0 + 2 = 1 + 1 in Z via 0 -> 0, 1 -> 2, 3 -> 1.
  std::vector<std::size_t> phi;
  EXPECT_TRUE(is_F2_isomorphic(AdditiveSet::from(rs(5, {0, 1, 3})), AdditiveSet::from(is({0, 1, 2})), &phi));
  EXPECT_EQ(phi[2], 1u);
  EXPECT_TRUE(is_F2_isomorphism(AdditiveSet::from(rs(5, {0, 1, 3})), AdditiveSet::from(is({0, 1, 2})), phi));
  EXPECT_FALSE(is_F2_isomorphic(is({0, 1, 2}), is({0, 1})));
}

TEST(Isomorphism, MatchesPermutationOracle) {
  std::mt19937_64 rng(44);
  int positives = 0;
  for (int it = 0; it < 400; ++it) {
    const i64 k = std::uniform_int_distribution<i64>(2, 6)(rng);
    const i64 range = std::uniform_int_distribution<i64>(k, 12)(rng);
    const auto x = oracle::random_subset(rng, range, k);
    auto y = oracle::random_subset(rng, range, k);
    AdditiveSet a = AdditiveSet::from(IntSet::from_elements(x));
    AdditiveSet b = AdditiveSet::from(IntSet::from_elements(y));
    if (it % 3 == 1) {
      const i64 n = std::uniform_int_distribution<i64>(k, 20)(rng);
      b = AdditiveSet::from(ResidueSet::from_elements(n, oracle::random_subset(rng, n, k)));
    } else if (it % 3 == 2) {
      std::vector<std::vector<i64>> pts;
      for (i64 v : x) pts.push_back({v % 3, v / 3});
      b = AdditiveSet::from_points(pts, 2);
    }
    std::vector<std::size_t> phi;
    const bool got = is_F2_isomorphic(a, b, &phi);
    ASSERT_EQ(got, oracle::isomorphic(group_of(a), group_of(b)));
    if (got) {
      ++positives;
      ASSERT_TRUE(oracle::preserves(group_of(a), group_of(b), phi));
    }
  }
  EXPECT_GT(positives, 20);
}

TEST(Rectifiable, Examples) {
  EXPECT_TRUE(is_rectifiable(rs(11, {0, 1, 2, 3})));
  EXPECT_FALSE(is_rectifiable(rs(4, {0, 1, 2, 3})));
  EXPECT_TRUE(is_rectifiable(rs(5, {0, 1, 3})));
}

TEST(Rectifiable, FastPathAgreesWithRankOracle) {
  std::mt19937_64 rng(45);
  int negatives = 0;
  for (int it = 0; it < 300; ++it) {
    const i64 n = std::uniform_int_distribution<i64>(2, 13)(rng);
    const i64 k = std::uniform_int_distribution<i64>(1, std::min<i64>(n, 6))(rng);
    const auto el = oracle::random_subset(rng, n, k);
    const auto a = ResidueSet::from_elements(n, el);
    const bool want = rectifiable_by_rank(oracle::residues(el, n));
    ASSERT_EQ(is_rectifiable(a), want) << to_literal(a);
    ASSERT_EQ(is_rectifiable(AdditiveSet::from(a)), want) << to_literal(a);
    negatives += want ? 0 : 1;
  }
  EXPECT_GT(negatives, 10);
}

TEST(Rectify, Examples) {
  const auto r = rectify(rs(5, {0, 1, 3}));
  EXPECT_TRUE(is_F2_isomorphic(AdditiveSet::from(rs(5, {0, 1, 3})), AdditiveSet::from(r.image)));
  EXPECT_TRUE(is_F2_isomorphic(r.image, is({0, 1, 2})));
  const auto r2 = rectify(rs(11, {0, 1, 2}));
  EXPECT_EQ(normal_form(r2.image).elements(), (std::vector<i64>{0, 1, 2}));
  expect_code(ErrorCode::NotRectifiable, [] { rectify(rs(4, {0, 1, 2, 3})); });
}

TEST(Rectify, OutputIsIsomorphicToInput) {
  std::mt19937_64 rng(46);
  for (int it = 0; it < 200; ++it) {
    const i64 n = std::uniform_int_distribution<i64>(5, 40)(rng);
    const auto el = oracle::random_subset(rng, n, std::uniform_int_distribution<i64>(1, std::min<i64>(n, 6))(rng));
    const auto a = ResidueSet::from_elements(n, el);
    if (!is_rectifiable(a)) {
      expect_code(ErrorCode::NotRectifiable, [&] { rectify(a); });
      continue;
    }
    const auto r = rectify(a);
    ASSERT_EQ(r.image.size(), a.size());
    ASSERT_TRUE(is_normal_form(r.image)) << to_literal(r.image);
    ASSERT_TRUE(oracle::isomorphic(oracle::residues(el, n), oracle::integers(r.image.elements()))) << to_literal(a);
    std::vector<std::size_t> id;
    for (i64 x : r.values) id.push_back(static_cast<std::size_t>(std::find(r.image.begin(), r.image.end(), x) - r.image.begin()));
    ASSERT_TRUE(oracle::preserves(oracle::residues(el, n), oracle::integers(r.image.elements()), id));
  }
}

TEST(DimensionBound, Examples) {
  auto r = dimension_lower_bound_check(is({0, 1, 3, 7}));
  EXPECT_EQ(r.dim, 3);
  EXPECT_EQ(r.doubling, 10);
  EXPECT_EQ(r.rhs, 10);
  EXPECT_TRUE(r.holds);
  r = dimension_lower_bound_check(is({0, 1, 2}));
  EXPECT_EQ(r.dim, 1);
  EXPECT_EQ(r.doubling, 5);
  EXPECT_EQ(r.rhs, 5);
  r = dimension_lower_bound_check(is({0, 1, 10, 11}));
  EXPECT_EQ(r.dim, 2);
  EXPECT_EQ(r.doubling, 9);
  EXPECT_EQ(r.rhs, 9);
  EXPECT_TRUE(r.holds);
}

TEST(AffineExtension, Examples) {
  auto L = affine_extension({{0, 0}, {1, 0}, {0, 1}, {2, 3}}, {5, 6, 15, 37});
  EXPECT_EQ(L.linear, (std::vector<Rational>{1, 10}));
  EXPECT_EQ(L.offset, 5);
  L = affine_extension({{0, 0}, {1, 0}, {0, 1}}, {0, 1, 100});
  EXPECT_EQ(L.linear, (std::vector<Rational>{1, 100}));
  EXPECT_EQ(L.offset, 0);
  expect_code(ErrorCode::NotAnF2Isomorphism, [] { affine_extension({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 1, 2, 5}); });
  expect_code(ErrorCode::NotFullDimensional, [] { affine_extension({{0, 0}, {1, 1}, {2, 2}}, {0, 1, 2}); });
}

TEST(AffineExtension, RecoversRandomAffineMaps) {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 100; ++it) {
    std::vector<std::vector<i64>> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int j = 0; j < 5; ++j) {
      std::vector<i64> q;
      for (int c = 0; c < 3; ++c) q.push_back(std::uniform_int_distribution<i64>(-9, 9)(rng));
      if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
    }
    std::vector<i64> w;
    for (int c = 0; c < 4; ++c) w.push_back(std::uniform_int_distribution<i64>(-20, 20)(rng));
    std::vector<i64> phi;
    for (const auto& q : pts) phi.push_back(w[0] * q[0] + w[1] * q[1] + w[2] * q[2] + w[3]);
    const auto L = affine_extension(pts, phi);
    for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(L(pts[i]), phi[i]);
  }
}

TEST(TwoLines, Examples) {
  std::vector<i64> el;
  for (i64 x = 0; x <= 5; ++x) el.push_back(x);
  for (i64 x = 100; x <= 105; ++x) el.push_back(x);
  const auto a = IntSet::from_elements(el);
  const auto t = two_lines_cover(a);
  EXPECT_EQ(t.p1, (ApDescriptor{0, 1, 6, 0}));
  EXPECT_EQ(t.p2, (ApDescriptor{100, 1, 6, 0}));
  EXPECT_EQ(t.union_size, 12);
  EXPECT_EQ(t.bound, 12);
  check_two_lines(a, t);

  std::vector<i64> dil;
  for (i64 x : el) dil.push_back(7 * x);
  const auto b = IntSet::from_elements(dil);
  const auto t7 = two_lines_cover(b);
  EXPECT_EQ(t7.p1, (ApDescriptor{0, 7, 6, 0}));
  EXPECT_EQ(t7.p2, (ApDescriptor{700, 7, 6, 0}));
  check_two_lines(b, t7);

  std::vector<i64> iv;
  for (i64 x = 0; x <= 10; ++x) iv.push_back(x);
  expect_code(ErrorCode::PreconditionFailed, [&] { two_lines_cover(IntSet::from_elements(iv)); });
}

TEST(TwoLines, RejectsSmallSetsAndLargeDoubling) {
  expect_code(ErrorCode::PreconditionFailed, [] { two_lines_cover(is({0, 1, 2, 3, 4, 100, 101, 102, 103, 104})); });
  expect_code(ErrorCode::PreconditionFailed,
              [] { two_lines_cover(is({0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023})); });
}

TEST(TwoLines, ConstructedFamilies) {
  std::mt19937_64 rng(48);
  int covered = 0;
  for (int it = 0; it < 40; ++it) {
    const i64 n1 = std::uniform_int_distribution<i64>(6, 12)(rng);
    const i64 n2 = std::uniform_int_distribution<i64>(6, 12)(rng);
    const i64 gap = std::uniform_int_distribution<i64>(40, 400)(rng);
    const i64 step = std::uniform_int_distribution<i64>(1, 5)(rng);
    std::vector<i64> el;
    for (i64 i = 0; i < n1; ++i) el.push_back(i * step);
    for (i64 i = 0; i < n2; ++i) el.push_back((gap + i) * step + 3 * step * (it % 2));
    const auto a = IntSet::from_elements(el);
    const auto t = two_lines_cover(a);
    check_two_lines(a, t);
    ++covered;
  }
  EXPECT_EQ(covered, 40);
}

TEST(HigherDimWitness, Examples) {
  auto w = lemma_higherdim_witness(is({0, 1, 4}), 4);
  EXPECT_TRUE(w.applicable);
  EXPECT_EQ(w.dim, 2);
  w = lemma_higherdim_witness(is({0, 1, 2}), 2);
  EXPECT_FALSE(w.applicable);
  EXPECT_EQ(w.dim, 1);
  w = lemma_higherdim_witness(is({0, 2, 3}), 3);
  EXPECT_TRUE(w.applicable);
  EXPECT_EQ(w.dim, 2);
  std::vector<std::vector<i64>> pts;
  for (const auto& p : w.points) pts.push_back({p[0], p[1]});
  EXPECT_TRUE(oracle::isomorphic(oracle::integers({0, 2, 3}), oracle::Group{pts, {0, 0}}));
}

TEST(HigherDimWitness, Preconditions) {
  expect_code(ErrorCode::PreconditionFailed, [] { lemma_higherdim_witness(is({0, 1}), 1); });
  expect_code(ErrorCode::PreconditionFailed, [] { lemma_higherdim_witness(is({0, 2, 4}), 2); });
  expect_code(ErrorCode::PreconditionFailed, [] { lemma_higherdim_witness(is({0, 1, 4}), 3); });
  expect_code(ErrorCode::PreconditionFailed, [] { lemma_higherdim_witness(is({0, 1, 4}), 1); });
}
