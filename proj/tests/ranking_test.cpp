#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace gkz;

namespace {

auto face_with(const Configuration &a, const ColumnSet &s) -> Face {
  for (auto &f : faces(a))
    if (f.indices == s) return f;
  throw std::runtime_error("no such face");
}

auto special(const Configuration &a) -> Face { return face_with(a, {a.n() - 1}); }

auto sorted(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

auto pt(std::initializer_list<long> xs) -> Parameter {
  IntVec v;
  for (auto x : xs) v.emplace_back(x);
  return Parameter::integral(v);
}

// Number of translates of ZF inside Z^d ∩ (beta + QF) missing NA + ZF, by
// scanning a box; membership in NA + ZF via x + q in NA for q in NF.
auto oracle_b_count(const Configuration &a, const Face &f, const IntVec &beta, long radius) -> std::size_t {
  const auto &h = a.positivity_functional();
  std::vector<IntVec> shifts{zero_vec(a.d())};
  for (auto j : f.indices) {
    std::vector<IntVec> next;
    for (const auto &q : shifts)
      for (int m = 0; m <= 8; ++m) next.push_back(add(q, scale(m, a.column(j))));
    shifts = std::move(next);
  }
  Int H = 0;
  for (const auto &q : shifts) H = std::max(H, dot(h, q));
  H += dot(h, add(beta, IntVec(a.d(), Int(radius)))) + 1;
  const auto na = oracle::semigroup_points(a.columns(), h, H);
  const Sublattice zf(a.d(), a.select(f.indices));
  const auto fcols = a.select(f.indices);
  const std::size_t r = fcols.empty() ? 0 : oracle::rank(fcols);
  std::vector<IntVec> classes;
  oracle::box_points(gkz::sub(beta, IntVec(a.d(), Int(radius))), add(beta, IntVec(a.d(), Int(radius))),
                     [&](const IntVec &x) {
                       auto ext = fcols;
                       ext.push_back(gkz::sub(x, beta));
                       if (oracle::rank(ext) != r) return; // off the flat
                       for (const auto &c : classes)
                         if (zf.contains(gkz::sub(x, c))) return;
                       classes.push_back(x);
                     });
  std::size_t missing = 0;
  for (const auto &c : classes) {
    const bool in = std::any_of(shifts.begin(), shifts.end(), [&](const IntVec &q) { return na.count(add(c, q)) > 0; });
    missing += !in;
  }
  return missing;
}

} // namespace

TEST(BFBeta, ZeroOnSpecialFace) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 5; ++b) {
      const auto a = fixture::family(d, b);
      std::vector<IntVec> want;
      for (long k = 1; k < b; ++k) want.push_back(scale(k, unit_vec(d, d - 1)));
      EXPECT_EQ(b_f_beta(Parameter::integral(zero_vec(d)), special(a), a), want);
    }
}

TEST(BFBeta, ShiftedLines) {
  for (auto [d, b] : {std::pair<std::size_t, long>{3, 3}, {3, 5}, {4, 4}})
    for (std::size_t k = 0; k + 1 < d; ++k)
      for (long m = 0; m < b; ++m) {
        const auto a = fixture::family(d, b);
        const auto reps = b_f_beta(Parameter::integral(scale(m, unit_vec(d, k))), special(a), a);
        EXPECT_EQ(long(reps.size()), b - 1 - m) << d << " " << b << " " << m;
      }
}

TEST(BFBeta, FlatMissingLattice) {
  const auto a = fixture::family(3, 2);
  const Parameter beta{{Rat(1, 2), 0, 0}};
  EXPECT_TRUE(b_f_beta(beta, special(a), a).empty());
  EXPECT_THROW((void)b_f_beta(pt({0, 0}), special(a), a), error);
}

TEST(BFBeta, MatchesBoxOracle) {
  for (const auto &[name, a] : fixture::small()) {
    if (a.n() > 5) continue;
    for (const auto &beta : {IntVec(a.d(), Int(0)), IntVec(a.d(), Int(1)), unit_vec(a.d(), 0)}) {
      for (const auto &f : faces(a)) {
        if (f.codim == 0) continue;
        const auto got = b_f_beta(Parameter::integral(beta), f, a);
        EXPECT_EQ(got.size(), oracle_b_count(a, f, beta, 4)) << name << " " << to_string(beta) << " F " << to_string(f.indices);
      }
    }
  }
}

TEST(BFBeta, CountBoundedByIndexAndVolume) {
  std::mt19937 rng(314);
  for (const auto &[name, a] : fixture::small()) {
    const Int vol = volume(a);
    for (int trial = 0; trial < 8; ++trial) {
      RatVec beta(a.d());
      for (auto &x : beta) x = make_rat(int(rng() % 9) - 4, 1 + rng() % 2);
      for (const auto &f : faces(a)) {
        const auto reps = b_f_beta(Parameter{beta}, f, a);
        const auto zf = face_lattice(f.indices, a);
        EXPECT_LE(Int(reps.size()), *lattice_index(zf, saturate(zf))) << name;
        EXPECT_LE(Int(reps.size()) * lattice_volume(f.indices, a), vol) << name;
      }
    }
  }
}

TEST(BFBeta, TranslationInvariant) {
  std::mt19937 rng(1);
  for (const auto &[name, a] : fixture::small())
    for (const auto &f : faces(a)) {
      const IntVec beta = oracle::random_matrix(rng, 1, a.d(), -2, 3).front();
      IntVec shift = zero_vec(a.d());
      for (auto j : f.indices) shift = add(shift, scale(Int(int(rng() % 7) - 3), a.column(j)));
      EXPECT_EQ(b_f_beta(Parameter::integral(beta), f, a), b_f_beta(Parameter::integral(add(beta, shift)), f, a))
          << name;
    }
}

TEST(RankingPairs, FamilyAtZero) {
  const auto a = fixture::family(3, 2);
  const auto pairs = ranking_pairs(pt({0, 0, 0}), a);
  const auto fb = special(a);
  bool found = false;
  for (const auto &p : pairs) {
    if (p.face == fb) {
      EXPECT_EQ(p.rep, (IntVec{0, 0, 1}));
      found = true;
    }
    // every listed translate misses NA
    MembershipIndex idx(a);
    EXPECT_FALSE(idx.contains(p.rep));
  }
  EXPECT_TRUE(found);
  const auto maximal = maximal_pairs(pairs, a);
  ASSERT_FALSE(maximal.empty());
  for (const auto &p : maximal) EXPECT_EQ(p.face, fb);
}

TEST(RankingPairs, EmptyCases) {
  EXPECT_TRUE(ranking_pairs(pt({7, 7, 13}), fixture::family(3, 2)).empty());
  EXPECT_TRUE(ranking_pairs(pt({0, 0, 0}), fixture::unit_simplex(3)).empty());
}

TEST(MaximalPairs, Inclusion) {
  const auto a = fixture::family(3, 2);
  const auto fb = special(a);
  const RankingPair line{fb, {0, 0, 1}};
  EXPECT_EQ(maximal_pairs({line}, a).size(), 1u);
  const RankingPair point{face_with(a, {}), {0, 0, 1}};
  const auto m = maximal_pairs({point, line}, a);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.front().face, fb);
}

TEST(SimpleFace, Examples) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 4; ++b) {
      const auto a = fixture::family(d, b);
      EXPECT_EQ(is_simple(Parameter::integral(zero_vec(d)), a), special(a));
      for (long m = 0; m <= b - 2; ++m) EXPECT_EQ(is_simple(Parameter::integral(scale(m, unit_vec(d, 0))), a), special(a));
    }
  const auto a = fixture::family(3, 2);
  EXPECT_EQ(is_simple(pt({7, 7, 13}), a), full_face(a));
  EXPECT_FALSE(is_simple(pt({-1, -2, -2}), a).has_value());
}

TEST(RankSimple, Examples) {
  const auto a32 = rank_simple(pt({0, 0, 0}), fixture::family(3, 2));
  EXPECT_EQ(*a32.rank, 5);
  EXPECT_EQ(a32.volume, 4);
  EXPECT_EQ(a32.b_count, 1);
  EXPECT_EQ(a32.face_volume, 1);
  const auto a510 = rank_simple(Parameter::integral(zero_vec(5)), fixture::family(5, 10));
  EXPECT_EQ(*a510.rank, 41);
  EXPECT_EQ(a510.volume, 14);
  EXPECT_EQ(*rank_simple(pt({1, 0, 0}), fixture::family(3, 3)).rank, 6);
  const auto deep = rank_simple(pt({7, 7, 13}), fixture::family(3, 2));
  EXPECT_EQ(*deep.rank, 4);
  EXPECT_TRUE(deep.pairs.empty());
}

TEST(RankSimple, NotSimpleCarriesPairs) {
  const auto a = fixture::family(3, 2);
  try {
    (void)rank_simple(pt({-1, -2, -2}), a);
    FAIL() << "expected NotSimple";
  } catch (const not_simple_error &e) {
    EXPECT_EQ(e.code(), errc::not_simple);
    EXPECT_EQ(e.report().maximal.size(), 3u);
    EXPECT_FALSE(e.report().rank.has_value());
  }
  EXPECT_FALSE(analyze(pt({-1, -2, -2}), a).rank.has_value());
}

TEST(RankSimple, EmptyPairsGiveVolume) {
  std::mt19937 rng(21);
  for (const auto &[name, a] : fixture::small())
    for (int trial = 0; trial < 10; ++trial) {
      const auto beta = oracle::random_matrix(rng, 1, a.d(), -3, 8).front();
      const auto r = analyze(Parameter::integral(beta), a);
      if (r.pairs.empty()) EXPECT_EQ(*r.rank, r.volume) << name;
      if (r.rank && r.simple_face->codim <= 1) EXPECT_EQ(*r.rank, r.volume) << name;
    }
}

TEST(RankSimple, ExtraLinesOfTheFamily) {
  // c + C e_d with c having two nonzero entries, |c| <= b - 2
  for (auto [d, b] : {std::pair<std::size_t, long>{3, 4}, {3, 5}, {4, 4}}) {
    const auto a = fixture::family(d, b);
    const Int vol = volume(a);
    for (long c1 = 1; c1 + 1 <= b - 2; ++c1)
      for (long c2 = 1; c1 + c2 <= b - 2; ++c2) {
        IntVec beta = zero_vec(d);
        beta[0] = c1;
        beta[1] = c2;
        const auto r = rank_simple(Parameter::integral(beta), a);
        EXPECT_EQ(*r.simple_face, special(a));
        EXPECT_EQ(*r.rank, vol + (b - 1 - c1 - c2) * Int(d - 2)) << to_string(beta);
        bool listed = false;
        for (const auto &l : exceptional_lines({d, b})) listed = listed || on_line(beta, l);
        EXPECT_FALSE(listed);
      }
  }
}

TEST(Bounds, FamilyExample) {
  const auto a = fixture::family(3, 2);
  const auto b = rank_bounds(pt({0, 0, 0}), special(a), a);
  EXPECT_EQ(b.codim_bound.bound, 8);
  EXPECT_EQ(b.sharper_bound.bound, 6);
  EXPECT_EQ(b.ratio_bound.value, Rat(5, 4));
  EXPECT_EQ(b.ratio_bound.bound, 2);
  EXPECT_TRUE(b.all_hold());
  EXPECT_GT(b.ratio_bound.slack, 0);
}

TEST(Bounds, LargeFamily) {
  const auto a = fixture::family(5, 100);
  const auto r = rank_simple(Parameter::integral(zero_vec(5)), a);
  EXPECT_EQ(*r.rank, 401);
  EXPECT_EQ(r.volume, 104);
  EXPECT_EQ(r.bounds->ratio_bound.value, Rat(401, 104));
  EXPECT_TRUE(r.bounds->all_hold());
}

TEST(Bounds, NonJumpingAndPreconditions) {
  const auto a = fixture::family(3, 2);
  const auto b = rank_bounds(pt({7, 7, 13}), full_face(a), a);
  EXPECT_TRUE(b.all_hold());
  EXPECT_FALSE(b.ratio_bound.applicable);
  EXPECT_THROW((void)rank_bounds(pt({0, 0, 0}), full_face(a), a), error);
  EXPECT_THROW((void)rank_bounds(pt({0, 0}), face_with(fixture::noncm2x4(), {}), fixture::noncm2x4()), error);
}

TEST(Bounds, StrictRatioOnJumpingParameters) {
  for (const auto &[name, a] : fixture::small()) {
    if (a.d() < 3) continue;
    oracle::box_points(IntVec(a.d(), Int(-1)), IntVec(a.d(), Int(2)), [&](const IntVec &beta) {
      const auto r = analyze(Parameter::integral(beta), a);
      if (!r.rank) return;
      EXPECT_TRUE(r.bounds->all_hold()) << name << " " << to_string(beta);
      if (*r.rank > r.volume) EXPECT_LT(Rat(*r.rank, r.volume), Rat(long(a.d()) - 1));
    });
  }
}

TEST(LowerBound, Examples) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 5; ++b) {
      const auto a = fixture::family(d, b);
      EXPECT_EQ(volume_lower_bound(special(a), a), b + long(d) - 1);
      EXPECT_EQ(volume_lower_bound(special(a), a), volume(a));
      EXPECT_FALSE(is_pyramid(special(a), a));
    }
  const auto p = fixture::noncm2x4();
  EXPECT_EQ(volume_lower_bound(face_with(p, {}), p), 3);
  EXPECT_EQ(volume_lower_bound(full_face(p), p), volume(p));
}

TEST(LowerBound, HoldsOnEveryFace) {
  for (const auto &[name, a] : fixture::small()) {
    const Int vol = volume(a);
    for (const auto &f : faces(a)) {
      EXPECT_LE(volume_lower_bound(f, a), vol) << name;
      if (is_pyramid(f, a)) EXPECT_EQ(volume_lower_bound(f, a), vol) << name;
    }
    EXPECT_GE(vol, Int(a.n()) - Int(a.d()) + 1);
  }
}
