#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace gkz;

namespace {

auto code_of(const std::vector<IntVec> &cols) -> std::optional<errc> {
  try {
    (void)validate(cols);
    return std::nullopt;
  } catch (const error &e) {
    return e.code();
  }
}

// Cone facets from cofactor normals of (d-1)-subsets.
auto oracle_cone_facets(const std::vector<IntVec> &cols) -> std::set<IntVec> {
  const std::size_t d = cols.front().size();
  std::set<IntVec> out;
  oracle::combinations(cols.size(), d - 1, [&](const auto &idx) {
    IntVec nrm(d);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<IntVec> m;
      for (auto i : idx) {
        IntVec row;
        for (std::size_t j = 0; j < d; ++j)
          if (j != c) row.push_back(cols[i][j]);
        m.push_back(row);
      }
      nrm[c] = (c % 2 ? -1 : 1) * oracle::det(m);
    }
    if (is_zero(nrm)) return;
    nrm = primitive(nrm);
    bool pos = false, neg = false;
    for (const auto &a : cols) {
      pos = pos || dot(nrm, a) > 0;
      neg = neg || dot(nrm, a) < 0;
    }
    if (pos && neg) return;
    out.insert(neg ? scale(-1, nrm) : nrm);
  });
  return out;
}

// Faces as the subsets equal to the closure under the facets containing them.
auto oracle_faces(const Configuration &a) -> std::set<ColumnSet> {
  const auto facets = oracle_cone_facets(a.columns());
  std::set<ColumnSet> out;
  const std::size_t n = a.n();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    ColumnSet s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) s.push_back(j);
    ColumnSet closure;
    for (std::size_t j = 0; j < n; ++j) {
      bool in = true;
      for (const auto &phi : facets) {
        bool contains = true;
        for (auto i : s) contains = contains && dot(phi, a.column(i)) == 0;
        if (contains && dot(phi, a.column(j)) != 0) in = false;
      }
      if (in) closure.push_back(j);
    }
    if (closure == s) out.insert(s);
  }
  return out;
}

auto face_with(const Configuration &a, const ColumnSet &s) -> Face {
  for (auto &f : faces(a))
    if (f.indices == s) return f;
  throw std::runtime_error("no such face");
}

auto with_origin(std::vector<IntVec> pts) {
  pts.push_back(zero_vec(pts.front().size()));
  return pts;
}

} // namespace

TEST(Validate, AcceptsExamples) {
  const auto a = fixture::family(3, 2);
  EXPECT_EQ(a.d(), 3u);
  EXPECT_EQ(a.n(), 5u);
  const auto b = fixture::noncm2x4();
  EXPECT_EQ(b.n(), 4u);
  for (const auto &c : a.columns()) EXPECT_GT(dot(a.positivity_functional(), c), 0);
}

TEST(Validate, RejectsBadInput) {
  EXPECT_EQ(code_of({{1, 0}, {-1, 0}, {0, 1}}), errc::not_pointed);
  EXPECT_EQ(code_of({{1, 0}, {0, 0}}), errc::duplicate_or_zero_column);
  EXPECT_EQ(code_of({{1, 0}, {0, 1}, {1, 0}}), errc::duplicate_or_zero_column);
  EXPECT_EQ(code_of({{1, 0}, {0, 1, 1}}), errc::dimension_mismatch);
  EXPECT_EQ(code_of({{1, 1}, {2, 2}}), errc::not_full_rank);
  EXPECT_EQ(code_of({{2, 0}, {0, 1}}), errc::lattice_not_zd);
  EXPECT_EQ(code_of({{1, 1}, {1, -1}}), errc::lattice_not_zd);
  EXPECT_EQ(code_of({}), errc::precondition_violated);
  EXPECT_EQ(code_of({{1}, {-1}}), errc::not_pointed);
}

TEST(ConeFacets, FamilyIsOrthant) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 4; ++b) {
      const auto a = fixture::family(d, b);
      const std::set<IntVec> got(a.facet_normals().begin(), a.facet_normals().end());
      std::set<IntVec> want;
      for (std::size_t i = 0; i < d; ++i) want.insert(unit_vec(d, i));
      EXPECT_EQ(got, want);
    }
}

TEST(ConeFacets, PlaneExamples) {
  const std::vector<IntVec> quadrant{{1, 0}, {0, 1}};
  const auto f = cone_facets(fixture::noncm2x4());
  EXPECT_EQ(std::set<IntVec>(f.begin(), f.end()), std::set<IntVec>(quadrant.begin(), quadrant.end()));
  const auto g = cone_facets(fixture::unit_simplex(2));
  EXPECT_EQ(std::set<IntVec>(g.begin(), g.end()), std::set<IntVec>(quadrant.begin(), quadrant.end()));
}

TEST(ConeFacets, MatchOracleOnFixtures) {
  for (const auto &[name, a] : fixture::small()) {
    const auto f = a.facet_normals();
    EXPECT_EQ(std::set<IntVec>(f.begin(), f.end()), oracle_cone_facets(a.columns())) << name;
    EXPECT_TRUE(std::is_sorted(f.rbegin(), f.rend())) << name;
  }
}

TEST(Faces, FamilyContainsSpecialAndEmptyFace) {
  const auto a = fixture::family(3, 2);
  const auto fs = faces(a);
  const auto fb = face_with(a, {4});
  EXPECT_EQ(fb.codim, 2u);
  const auto empty = face_with(a, {});
  EXPECT_EQ(empty.codim, 3u);
  EXPECT_EQ(fs.front().indices, a.all_columns());
  EXPECT_EQ(fs.front().codim, 0u);
}

TEST(Faces, UnitSimplexHasAllSubsets) {
  for (std::size_t d = 1; d <= 4; ++d) EXPECT_EQ(faces(fixture::unit_simplex(d)).size(), std::size_t{1} << d);
}

TEST(Faces, CertificatesAndSpanClosure) {
  for (const auto &[name, a] : fixture::small()) {
    const auto fs = faces(a);
    std::set<ColumnSet> got;
    for (const auto &f : fs) {
      got.insert(f.indices);
      EXPECT_TRUE(is_certified_face(f, a)) << name;
      const auto rows = a.select(f.indices);
      const std::size_t r = rows.empty() ? 0 : oracle::rank(rows);
      EXPECT_EQ(f.dim, r);
      for (std::size_t j = 0; j < a.n(); ++j) {
        const bool in = std::binary_search(f.indices.begin(), f.indices.end(), j);
        EXPECT_EQ(dot(f.normal, a.column(j)) == 0, in) << name;
        EXPECT_GE(dot(f.normal, a.column(j)), 0) << name;
        // F = A ∩ RF
        auto ext = rows;
        ext.push_back(a.column(j));
        EXPECT_EQ(oracle::rank(ext) == r, in) << name << " column " << j;
      }
    }
    EXPECT_EQ(got, oracle_faces(a)) << name;
  }
}

TEST(Faces, CertificateRejectsNonFaces) {
  const auto a = fixture::family(3, 2);
  Face fake{{0, 4}, {0, 1, 0}, 2, 1};
  EXPECT_FALSE(is_certified_face(fake, a));
  EXPECT_THROW(QuotientSemigroup(a, fake), error);
}

TEST(Hull, Triangle) {
  const auto h = hull(std::vector<IntVec>{{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(h.dim, 2u);
  EXPECT_EQ(h.facets.size(), 3u);
  EXPECT_EQ(h.triangulation.size(), 1u);
  EXPECT_EQ(h.vertices.size(), 3u);
  EXPECT_TRUE(h.equations.empty());
}

TEST(Hull, CollinearSegment) {
  const auto h = hull(std::vector<IntVec>{{0, 0}, {1, 0}, {2, 0}});
  EXPECT_EQ(h.dim, 1u);
  EXPECT_EQ(h.vertices, (std::vector<RatVec>{{0, 0}, {2, 0}}));
  EXPECT_TRUE(h.contains({Rat(3, 2), 0}));
  EXPECT_FALSE(h.contains({Rat(5, 2), 0}));
  EXPECT_FALSE(h.contains({1, Rat(1, 7)}));
}

TEST(Hull, FamilyPolytope) {
  const auto a = fixture::family(3, 2);
  const auto h = delta_hull(a.all_columns(), a);
  EXPECT_EQ(h.dim, 3u);
  EXPECT_EQ(h.simplex_volume_sum(), 4);
}

TEST(Hull, RandomPointSetsMatchEhrhartVolume) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 2 + rng() % 2;
    auto pts = oracle::random_matrix(rng, 4 + rng() % 4, d, -2, 3);
    if (oracle::rank([&] {
          std::vector<IntVec> diff;
          for (const auto &p : pts) diff.push_back(gkz::sub(p, pts.front()));
          return diff;
        }()) != d)
      continue;
    const auto h = hull(pts);
    EXPECT_EQ(h.simplex_volume_sum(), Rat(oracle::normalized_volume(pts)));
    for (const auto &p : pts) EXPECT_TRUE(h.contains(to_rat(p)));
    // vertices are input points that are not in the hull of the others
    for (const auto &v : h.vertices) {
      std::vector<IntVec> rest;
      for (const auto &p : pts)
        if (to_rat(p) != v) rest.push_back(p);
      EXPECT_FALSE(hull(rest).contains(v));
    }
  }
}

TEST(DeltaCap, Examples) {
  const auto a = fixture::family(3, 2);
  EXPECT_EQ(delta_cap({4}, a, DeltaMode::columns), (std::vector<IntVec>{{0, 0, 2}}));
  const auto pts = delta_cap(a.all_columns(), a, DeltaMode::lattice);
  EXPECT_NE(std::find(pts.begin(), pts.end(), IntVec{0, 0, 1}), pts.end());
  // bounding-box oracle with the brute-force facets
  const auto facets = oracle::polytope_facets(with_origin(a.columns()));
  std::vector<IntVec> want;
  oracle::box_points(IntVec{0, 0, 0}, IntVec{1, 1, 2}, [&](const IntVec &x) {
    for (const auto &[n, off] : facets)
      if (dot(n, x) > off) return;
    want.push_back(x);
  });
  auto got = pts;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
  const auto u = fixture::unit_simplex(3);
  EXPECT_EQ(delta_cap({0}, u, DeltaMode::columns), (std::vector<IntVec>{{1, 0, 0}}));
}

TEST(NormalizedVolume, SpecialFaceLattices) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 6; ++b) {
      const auto a = fixture::family(d, b);
      const ColumnSet fb{a.n() - 1};
      EXPECT_EQ(normalized_volume(fb, a, face_lattice(fb, a)), 1);
      EXPECT_EQ(normalized_volume(fb, a, saturate(face_lattice(fb, a))), b);
      EXPECT_EQ(volume(a), b + long(d) - 1);
    }
}

TEST(NormalizedVolume, PlaneExampleAndEmptyFace) {
  const auto a = fixture::noncm2x4();
  EXPECT_EQ(volume(a), 4);
  EXPECT_EQ(normalized_volume({}, a, Sublattice(2, {})), 1);
}

TEST(NormalizedVolume, LatticeOutOfRange) {
  const auto a = fixture::family(3, 2);
  try {
    (void)normalized_volume({4}, a, Sublattice(3, {{0, 0, 4}}));
    FAIL();
  } catch (const error &e) {
    EXPECT_EQ(e.code(), errc::lambda_out_of_range);
  }
  EXPECT_THROW((void)normalized_volume({4}, a, Sublattice::full(3)), error);
}

TEST(NormalizedVolume, LatticeInvariance) {
  for (const auto &[name, a] : fixture::small())
    for (const auto &f : faces(a)) {
      const auto zf = face_lattice(f.indices, a);
      const auto sat = saturate(zf);
      const Rat vsat = normalized_volume(f.indices, a, sat);
      for (const auto &r : coset_representatives(zf, sat).representatives) {
        auto gens = zf.basis();
        gens.push_back(r);
        const Sublattice lambda(a.d(), gens);
        EXPECT_EQ(normalized_volume(f.indices, a, lambda) * Rat(*lattice_index(lambda, sat)), vsat)
            << name;
      }
    }
}

TEST(NormalizedVolume, FamilyPrismPlusSimplex) {
  for (std::size_t d = 3; d <= 5; ++d)
    for (long b = 2; b <= 5; ++b) {
      std::vector<IntVec> prism{zero_vec(d), unit_vec(d, d - 1)}, simplex{unit_vec(d, d - 1)};
      for (std::size_t k = 0; k + 1 < d; ++k) {
        auto top = unit_vec(d, k);
        top[d - 1] = 1;
        prism.push_back(unit_vec(d, k));
        prism.push_back(top);
        simplex.push_back(top);
      }
      simplex.push_back(scale(b, unit_vec(d, d - 1)));
      EXPECT_EQ(hull(prism).simplex_volume_sum(), long(d));
      EXPECT_EQ(hull(simplex).simplex_volume_sum(), b - 1);
      if (d == 3) {
        EXPECT_EQ(oracle::normalized_volume(prism), long(d));
        EXPECT_EQ(oracle::normalized_volume(simplex), b - 1);
      }
      EXPECT_EQ(volume(fixture::family(d, b)), b - 1 + long(d));
    }
}

TEST(NormalizedVolume, RandomConfigurationsMatchEhrhart) {
  std::mt19937 rng(2718);
  int checked = 0;
  while (checked < 40) {
    const std::size_t d = 2 + rng() % 2, n = d + rng() % (8 - d);
    auto cols = oracle::random_matrix(rng, n, d, -2, 3);
    for (auto &c : cols) c[0] = 1 + rng() % 3; // first coordinate positive: pointed
    Configuration a;
    try {
      a = validate(cols);
    } catch (const error &) {
      continue;
    }
    EXPECT_EQ(volume(a), oracle::normalized_volume(with_origin(cols)));
    ++checked;
  }
}

TEST(Augment, Examples) {
  const auto a = fixture::family(3, 2);
  EXPECT_EQ(augment({4}, a), 0u);
  EXPECT_EQ(augment({}, a), 0u);
  const auto b = validate({{2, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(augment({}, b), 1u); // the segment to (2,0) contains (1,0)
  EXPECT_THROW((void)augment(a.all_columns(), a), error);
  EXPECT_THROW((void)augment({0}, b), error); // Delta_{(2,0)} contains (1,0)
}

TEST(Augment, ReplayReachesAllColumns) {
  for (const auto &[name, a] : fixture::small()) {
    ColumnSet tau;
    std::optional<Int> last;
    while (tau.size() < a.n()) {
      const auto j = augment(tau, a);
      ASSERT_FALSE(std::binary_search(tau.begin(), tau.end(), j));
      tau.insert(std::upper_bound(tau.begin(), tau.end(), j), j);
      EXPECT_EQ(delta_cap_indices(tau, a), tau) << name;
      if (span_dim(tau, a) == a.d()) {
        const Int v = oracle::normalized_volume(with_origin(a.select(tau)));
        if (last) EXPECT_GE(v, *last + 1) << name;
        last = v;
      }
    }
    EXPECT_EQ(*last, volume(a)) << name;
  }
}

TEST(Pyramid, Examples) {
  const auto a = fixture::family(3, 2);
  const auto fb = face_with(a, {4});
  EXPECT_EQ(pyramid_excess(fb, a), 2);
  EXPECT_FALSE(is_pyramid(fb, a));
  EXPECT_TRUE(is_pyramid(full_face(a), a));
  const auto p = build_noncm_example(3, 5);
  EXPECT_TRUE(is_pyramid(face_with(p, {0, 1, 2, 3}), p));
  EXPECT_EQ(volume(p), 4);
  for (std::size_t d = 3; d <= 6; ++d) EXPECT_FALSE(is_pyramid(face_with(fixture::family(d, 3), {2 * d - 2}), fixture::family(d, 3)));
}
