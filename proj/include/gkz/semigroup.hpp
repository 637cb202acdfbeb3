#pragma once

// Membership in NA and in NA + ZF, holes, Hilbert bases and normality.

#include "gkz/polytope.hpp"

#include <map>

namespace gkz {

namespace detail {
inline auto in_cone(const IntVec &v, const std::vector<IntVec> &facets) -> bool {
  return std::all_of(facets.begin(), facets.end(),
                     [&](const IntVec &phi) { return dot(phi, v) >= 0; });
}
} // namespace detail

// Memoized membership test for NA. v is in NA iff v = 0 or v - a_j is in NA
// for some column; the positivity functional strictly decreases along the
// recursion. Not thread-safe: one index per task.
class MembershipIndex {
public:
  explicit MembershipIndex(Configuration a) : a_(std::move(a)) {}

  [[nodiscard]] auto configuration() const noexcept -> const Configuration & { return a_; }
  [[nodiscard]] auto functional() const noexcept -> const IntVec & {
    return a_.positivity_functional();
  }

  auto contains(const IntVec &v) -> bool {
    if (v.size() != a_.d()) throw error(errc::dimension_mismatch, "membership: dimension");
    if (is_zero(v)) return true;
    if (!detail::in_cone(v, a_.facet_normals())) return false;
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    bool found = false;
    for (const auto &c : a_.columns())
      if (contains(gkz::sub(v, c))) {
        found = true;
        break;
      }
    memo_.emplace(v, found);
    return found;
  }

  [[nodiscard]] auto memo_size() const noexcept -> std::size_t { return memo_.size(); }

private:
  Configuration a_;
  std::map<IntVec, bool> memo_;
};

inline auto contains(const IntVec &v, MembershipIndex &idx) -> bool { return idx.contains(v); }

// The image of NA in Z^d / ZF. Quotient coordinates come from the Smith form
// of ZF: y = x V, with y_i mod d_i (torsion, d_i > 1) for the first rank
// coordinates and y_i free for the rest. The face normal is constant on
// cosets of ZF and strictly positive on the columns outside F.
class QuotientSemigroup {
public:
  QuotientSemigroup(Configuration a, Face f) : a_(std::move(a)), face_(std::move(f)) {
    if (!is_certified_face(face_, a_))
      throw error(errc::not_a_face, "column set has no valid supporting certificate");
    const auto zf = face_lattice(face_.indices, a_);
    const auto sf = smith_normal_form(IntMatrix::from_rows(zf.basis(), a_.d()));
    v_ = sf.v;
    for (const auto &d : sf.invariant_factors()) factors_.push_back(d);
    for (std::size_t j = 0; j < a_.n(); ++j)
      if (!std::binary_search(face_.indices.begin(), face_.indices.end(), j))
        outside_.push_back(a_.column(j));
    for (const auto &phi : a_.facet_normals()) {
      bool contains_face = true;
      for (auto j : face_.indices) contains_face = contains_face && dot(phi, a_.column(j)) == 0;
      if (contains_face) facets_.push_back(phi);
    }
  }

  [[nodiscard]] auto face() const noexcept -> const Face & { return face_; }
  [[nodiscard]] auto free_rank() const noexcept -> std::size_t {
    return a_.d() - factors_.size();
  }
  [[nodiscard]] auto torsion() const -> IntVec {
    IntVec t;
    for (const auto &d : factors_)
      if (d > 1) t.push_back(d);
    return t;
  }

  // (torsion part, free part) of the image of x
  [[nodiscard]] auto project(const IntVec &x) const -> IntVec {
    const IntVec y = mul(x, v_);
    IntVec key;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i] > 1) key.push_back(floor_mod(y[i], factors_[i]));
    for (std::size_t i = factors_.size(); i < y.size(); ++i) key.push_back(y[i]);
    return key;
  }

  [[nodiscard]] auto projected_generators() const -> std::vector<IntVec> {
    std::vector<IntVec> g;
    for (const auto &c : outside_) g.push_back(project(c));
    return g;
  }

  // x in NA + ZF
  auto contains(const IntVec &x) -> bool {
    if (x.size() != a_.d()) throw error(errc::dimension_mismatch, "membership: dimension");
    const Int level = dot(face_.normal, x);
    if (level < 0 || !detail::in_cone(x, facets_)) return false;
    IntVec key = project(x);
    if (level == 0) return is_zero(key);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool found = false;
    for (const auto &c : outside_)
      if (contains(gkz::sub(x, c))) {
        found = true;
        break;
      }
    memo_.emplace(std::move(key), found);
    return found;
  }

private:
  Configuration a_;
  Face face_;
  IntMatrix v_;
  IntVec factors_;
  std::vector<IntVec> outside_;
  std::vector<IntVec> facets_;
  std::map<IntVec, bool> memo_;
};

inline auto contains_mod_face(const IntVec &v, const Face &f, const Configuration &a) -> bool {
  QuotientSemigroup q(a, f);
  return q.contains(v);
}

namespace detail {

// Lattice points of the half-open parallelepiped sum [0,1) g_i spanned by
// the rows of a nonsingular square matrix: one per coset of the row lattice.
inline auto parallelepiped_points(const std::vector<IntVec> &gens) -> std::vector<IntVec> {
  const std::size_t d = gens.size();
  const Sublattice lg(d, gens);
  const auto reps = coset_representatives(lg, Sublattice::full(d)).representatives;
  const auto rows = to_rat(gens);
  std::vector<IntVec> out;
  out.reserve(reps.size());
  for (auto x : reps) {
    const auto lambda = *solve_left(rows, to_rat(x));
    for (std::size_t i = 0; i < d; ++i) {
      const Int f = floor(lambda[i]);
      if (f != 0) x = gkz::sub(x, scale(f, gens[i]));
    }
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Simplicial subcones spanned by columns: a triangulation of the
// cross-section {h = 1}, one generator per ray (the one of least height).
inline auto simplicial_subcones(const Configuration &a) -> std::vector<std::vector<IntVec>> {
  const auto &h = a.positivity_functional();
  std::map<IntVec, IntVec> ray_gen; // primitive direction -> shortest column
  for (const auto &c : a.columns()) {
    auto dir = primitive(c);
    auto it = ray_gen.find(dir);
    if (it == ray_gen.end() || dot(h, c) < dot(h, it->second)) ray_gen[dir] = c;
  }
  std::vector<RatVec> section;
  std::map<RatVec, IntVec> back;
  for (const auto &[dir, c] : ray_gen) {
    RatVec p = to_rat(c);
    const Rat hc = dot(h, c);
    for (auto &x : p) x /= hc;
    back[p] = c;
    section.push_back(std::move(p));
  }
  const auto hl = hull(section);
  std::vector<std::vector<IntVec>> cones;
  for (const auto &s : hl.triangulation) {
    std::vector<IntVec> g;
    for (auto i : s) g.push_back(back.at(hl.points[i]));
    cones.push_back(std::move(g));
  }
  return cones;
}

} // namespace detail

// Minimal generating set of the saturation R_{>=0}A ∩ Z^d: parallelepiped
// points of a simplicial subdivision plus the columns, reduced to the
// irreducible ones.
inline auto hilbert_basis(const Configuration &a) -> std::vector<IntVec> {
  std::set<IntVec> cand(a.columns().begin(), a.columns().end());
  for (const auto &g : detail::simplicial_subcones(a))
    for (auto &p : detail::parallelepiped_points(g))
      if (!is_zero(p)) cand.insert(std::move(p));

  std::vector<IntVec> basis;
  for (const auto &x : cand) {
    bool reducible = false;
    for (const auto &y : cand) {
      if (y == x) continue;
      if (detail::in_cone(gkz::sub(x, y), a.facet_normals())) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(x);
  }
  return basis;
}

inline auto is_normal(const Configuration &a) -> bool {
  MembershipIndex idx(a);
  const auto hb = hilbert_basis(a);
  return std::all_of(hb.begin(), hb.end(), [&](const IntVec &v) { return idx.contains(v); });
}

struct IntBox {
  IntVec lo, hi; // inclusive
};

template <class F> void for_each_point(const IntBox &box, F &&f) {
  const std::size_t d = box.lo.size();
  for (std::size_t i = 0; i < d; ++i)
    if (box.lo[i] > box.hi[i]) return;
  IntVec x = box.lo;
  for (;;) {
    f(x);
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++x[i] <= box.hi[i]) break;
      x[i] = box.lo[i];
    }
    if (i == d) return;
  }
}

struct HoleReport {
  IntBox box;
  std::vector<IntVec> holes; // lexicographic order
};

inline auto holes_in_box(const Configuration &a, const IntBox &box) -> HoleReport {
  if (box.lo.size() != a.d() || box.hi.size() != a.d())
    throw error(errc::dimension_mismatch, "box dimension");
  MembershipIndex idx(a);
  HoleReport r{box, {}};
  for_each_point(box, [&](const IntVec &x) {
    if (detail::in_cone(x, a.facet_normals()) && !idx.contains(x)) r.holes.push_back(x);
  });
  std::sort(r.holes.begin(), r.holes.end());
  return r;
}

} // namespace gkz
