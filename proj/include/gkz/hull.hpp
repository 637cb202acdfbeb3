#pragma once

// Exact rational convex hulls by beneath-beyond placing, producing facet
// inequalities, affine-hull equations and a placing triangulation.

#include "gkz/matrix.hpp"

#include <map>
#include <set>
#include <tuple>

namespace gkz {

// normal . x <= offset (facets) or normal . x == offset (equations).
struct Halfspace {
  IntVec normal;
  Rat offset;
  friend auto operator<(const Halfspace &a, const Halfspace &b) -> bool {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  }
  friend auto operator==(const Halfspace &, const Halfspace &) -> bool = default;
};

struct PolytopeHull {
  std::vector<RatVec> points;  // input, sorted lexicographically and deduplicated
  std::vector<RatVec> vertices;
  std::vector<Halfspace> facets;
  std::vector<Halfspace> equations;
  std::size_t dim = 0;
  std::vector<std::vector<std::size_t>> triangulation; // indices into `points`

  [[nodiscard]] auto contains(const RatVec &x) const -> bool {
    for (const auto &e : equations)
      if (dot(to_rat(e.normal), x) != e.offset) return false;
    for (const auto &f : facets)
      if (dot(to_rat(f.normal), x) > f.offset) return false;
    return true;
  }

  // Sum of |det| over the simplices; the normalized volume with respect to
  // Z^n when the hull is full-dimensional in R^n.
  [[nodiscard]] auto simplex_volume_sum() const -> Rat {
    if (points.empty() || dim != points.front().size())
      throw error(errc::precondition_violated, "hull is not full-dimensional");
    Rat total = 0;
    for (const auto &s : triangulation) {
      RatMatrix m;
      for (std::size_t i = 1; i < s.size(); ++i) {
        RatVec row(dim);
        for (std::size_t j = 0; j < dim; ++j) row[j] = points[s[i]][j] - points[s[0]][j];
        m.push_back(std::move(row));
      }
      total += abs(determinant(std::move(m)));
    }
    return total;
  }
};

namespace detail {

// Scales a rational hyperplane n.y <= c to a primitive integer normal.
inline auto normalize_halfspace(const RatVec &n, const Rat &c) -> std::pair<IntVec, Rat> {
  IntVec p = primitive(n);
  // find the positive factor relating p and n
  std::size_t i = 0;
  while (n[i] == 0) ++i;
  const Rat factor = Rat(p[i]) / n[i];
  return {std::move(p), c * factor};
}

struct BoundaryFacet {
  std::vector<std::size_t> verts; // sorted indices into local coordinates
  RatVec normal;                  // outward, in local coordinates
  Rat offset;
};

inline auto make_facet(std::vector<std::size_t> verts, const std::vector<RatVec> &y,
                       const RatVec &interior) -> BoundaryFacet {
  std::sort(verts.begin(), verts.end());
  const std::size_t k = interior.size();
  RatMatrix diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    RatVec row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = y[verts[i]][j] - y[verts[0]][j];
    diffs.push_back(std::move(row));
  }
  auto ns = nullspace(diffs, k);
  RatVec n = std::move(ns.front());
  Rat c = dot(n, y[verts[0]]);
  if (dot(n, interior) > c) {
    for (auto &x : n) x = -x;
    c = -c;
  }
  return {std::move(verts), std::move(n), std::move(c)};
}

} // namespace detail

inline auto hull(std::vector<RatVec> input) -> PolytopeHull {
  if (input.empty()) throw error(errc::precondition_violated, "hull of an empty point set");
  const std::size_t d = input.front().size();
  for (const auto &p : input)
    if (p.size() != d) throw error(errc::dimension_mismatch, "hull: ragged points");
  std::sort(input.begin(), input.end());
  input.erase(std::unique(input.begin(), input.end()), input.end());

  PolytopeHull h;
  h.points = std::move(input);
  const auto &pts = h.points;
  const RatVec &p0 = pts.front();

  auto diff = [&](const RatVec &p) {
    RatVec r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = p[j] - p0[j];
    return r;
  };

  // greedy affine basis in input order
  std::vector<std::size_t> init{0};
  RatMatrix basis;
  for (std::size_t i = 1; i < pts.size() && basis.size() < d; ++i) {
    basis.push_back(diff(pts[i]));
    if (rank(basis) == basis.size()) init.push_back(i);
    else basis.pop_back();
  }
  const std::size_t k = basis.size();
  h.dim = k;

  for (auto &e : nullspace(basis, d)) {
    auto [n, c] = detail::normalize_halfspace(e, dot(e, p0));
    h.equations.push_back({std::move(n), std::move(c)});
  }
  std::sort(h.equations.begin(), h.equations.end());

  if (k == 0) {
    h.vertices = {p0};
    h.triangulation = {{0}};
    return h;
  }

  // local coordinates: y = (x - p0)|_piv * inv(B|_piv)
  RatMatrix bt = basis;
  auto piv = rref(bt);
  RatMatrix bsub(k, RatVec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) bsub[i][j] = basis[i][piv[j]];
  const RatMatrix binv = inverse(bsub);
  std::vector<RatVec> y;
  y.reserve(pts.size());
  for (const auto &p : pts) {
    RatVec z(k), yi(k, Rat{0});
    for (std::size_t j = 0; j < k; ++j) z[j] = p[piv[j]] - p0[piv[j]];
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) yi[j] += z[i] * binv[i][j];
    y.push_back(std::move(yi));
  }

  RatVec interior(k, Rat{0});
  for (auto i : init)
    for (std::size_t j = 0; j < k; ++j) interior[j] += y[i][j];
  for (auto &x : interior) x /= static_cast<int>(k + 1);

  std::vector<detail::BoundaryFacet> boundary;
  for (std::size_t omit = 0; omit < init.size(); ++omit) {
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i < init.size(); ++i)
      if (i != omit) verts.push_back(init[i]);
    boundary.push_back(detail::make_facet(std::move(verts), y, interior));
  }
  h.triangulation.push_back(init);

  std::vector<bool> placed(pts.size(), false);
  for (auto i : init) placed[i] = true;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (placed[p]) continue;
    std::vector<bool> visible(boundary.size());
    bool any = false;
    for (std::size_t f = 0; f < boundary.size(); ++f) {
      visible[f] = dot(boundary[f].normal, y[p]) > boundary[f].offset;
      any = any || visible[f];
    }
    if (!any) continue;
    // ridges seen once among the visible facets form the horizon
    std::map<std::vector<std::size_t>, int> ridge_count;
    for (std::size_t f = 0; f < boundary.size(); ++f) {
      if (!visible[f]) continue;
      auto simplex = boundary[f].verts;
      simplex.push_back(p);
      std::sort(simplex.begin(), simplex.end());
      h.triangulation.push_back(std::move(simplex));
      for (std::size_t omit = 0; omit < boundary[f].verts.size(); ++omit) {
        std::vector<std::size_t> ridge;
        for (std::size_t i = 0; i < boundary[f].verts.size(); ++i)
          if (i != omit) ridge.push_back(boundary[f].verts[i]);
        ++ridge_count[ridge];
      }
    }
    std::vector<detail::BoundaryFacet> next;
    for (std::size_t f = 0; f < boundary.size(); ++f)
      if (!visible[f]) next.push_back(std::move(boundary[f]));
    for (auto &[ridge, count] : ridge_count) {
      if (count != 1) continue;
      auto verts = ridge;
      verts.push_back(p);
      next.push_back(detail::make_facet(std::move(verts), y, interior));
    }
    boundary = std::move(next);
  }

  // merge coplanar boundary simplices into facets (local coordinates)
  std::set<std::pair<IntVec, Rat>> local_facets;
  for (const auto &f : boundary) local_facets.insert(detail::normalize_halfspace(f.normal, f.offset));

  // vertices: points whose incident facet normals span R^k
  for (std::size_t p = 0; p < pts.size(); ++p) {
    std::vector<IntVec> normals;
    for (const auto &[n, c] : local_facets)
      if (dot(to_rat(n), y[p]) == c) normals.push_back(n);
    if (rank(normals) == k) h.vertices.push_back(pts[p]);
  }

  // lift n.y <= c to R^d: n.y = z . (binv n)
  for (const auto &[n, c] : local_facets) {
    RatVec w(k, Rat{0});
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w[i] += binv[i][j] * n[j];
    RatVec full(d, Rat{0});
    Rat off = c;
    for (std::size_t i = 0; i < k; ++i) {
      full[piv[i]] = w[i];
      off += w[i] * p0[piv[i]];
    }
    auto [nn, cc] = detail::normalize_halfspace(full, off);
    h.facets.push_back({std::move(nn), std::move(cc)});
  }
  std::sort(h.facets.begin(), h.facets.end());
  std::sort(h.triangulation.begin(), h.triangulation.end());
  return h;
}

inline auto hull(const std::vector<IntVec> &points) -> PolytopeHull {
  std::vector<RatVec> r;
  r.reserve(points.size());
  for (const auto &p : points) r.push_back(to_rat(p));
  return hull(std::move(r));
}

} // namespace gkz
