#pragma once

// Point configurations A, the faces of their cones, the polytopes
// Delta_F = conv(0, F) and normalized volumes.

#include "gkz/hull.hpp"
#include "gkz/lattice.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <set>

namespace gkz {

using ColumnSet = std::vector<std::size_t>; // sorted 0-based column indices

class Configuration;
auto validate(std::vector<IntVec> columns) -> Configuration;

// A configuration satisfying the standing hypotheses: full rank, ZA = Z^d,
// pointed cone, pairwise distinct nonzero columns. Built only by validate().
class Configuration {
public:
  [[nodiscard]] auto d() const noexcept -> std::size_t { return d_; }
  [[nodiscard]] auto n() const noexcept -> std::size_t { return columns_.size(); }
  [[nodiscard]] auto columns() const noexcept -> const std::vector<IntVec> & { return columns_; }
  [[nodiscard]] auto column(std::size_t j) const -> const IntVec & { return columns_.at(j); }
  [[nodiscard]] auto positivity_functional() const noexcept -> const IntVec & { return h_; }
  // primitive inner facet normals of the cone, lexicographically descending
  [[nodiscard]] auto facet_normals() const noexcept -> const std::vector<IntVec> & {
    return facets_;
  }
  [[nodiscard]] auto all_columns() const -> ColumnSet {
    ColumnSet s(n());
    for (std::size_t j = 0; j < n(); ++j) s[j] = j;
    return s;
  }
  [[nodiscard]] auto select(const ColumnSet &s) const -> std::vector<IntVec> {
    std::vector<IntVec> r;
    r.reserve(s.size());
    for (auto j : s) r.push_back(column(j));
    return r;
  }

private:
  friend auto validate(std::vector<IntVec> columns) -> Configuration;
  std::size_t d_ = 0;
  std::vector<IntVec> columns_;
  IntVec h_;
  std::vector<IntVec> facets_;
};

struct Face {
  ColumnSet indices;
  IntVec normal; // zero on the face, positive on the other columns
  std::size_t dim = 0;
  std::size_t codim = 0;
  friend auto operator==(const Face &a, const Face &b) -> bool { return a.indices == b.indices; }
};

namespace detail {

inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<void(const ColumnSet &)> &f) {
  ColumnSet c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    f(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Facets of the full-dimensional cone spanned by `cols`: every hyperplane
// through d-1 independent generators that has all generators on one side.
inline auto cone_facets(const std::vector<IntVec> &cols, std::size_t d) -> std::vector<IntVec> {
  std::set<IntVec> found;
  for_each_combination(cols.size(), d - 1, [&](const ColumnSet &c) {
    std::vector<IntVec> rows;
    for (auto j : c) rows.push_back(cols[j]);
    if (rank(rows) != d - 1) return;
    auto ker = integer_kernel(rows, d);
    IntVec phi = std::move(ker.front());
    bool pos = false, neg = false;
    for (const auto &a : cols) {
      const Int v = dot(phi, a);
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos && neg) return;
    if (neg) phi = scale(-1, phi);
    found.insert(std::move(phi));
  });
  return {found.rbegin(), found.rend()};
}

} // namespace detail

// Checks the standing hypotheses and attaches a positivity certificate.
inline auto validate(std::vector<IntVec> columns) -> Configuration {
  if (columns.empty()) throw error(errc::precondition_violated, "configuration has no columns");
  const std::size_t d = columns.front().size();
  if (d == 0) throw error(errc::precondition_violated, "columns have dimension 0");
  for (const auto &c : columns)
    if (c.size() != d) throw error(errc::dimension_mismatch, "columns have different dimensions");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (is_zero(columns[i]))
      throw error(errc::duplicate_or_zero_column, "column " + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (columns[i] == columns[j])
        throw error(errc::duplicate_or_zero_column,
                    "columns " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                        " coincide");
  }
  if (rank(columns) != d) throw error(errc::not_full_rank, "columns do not span Q^d");
  if (!Sublattice(d, columns).equals(Sublattice::full(d)))
    throw error(errc::lattice_not_zd, "columns generate a proper sublattice of Z^d");

  Configuration a;
  a.d_ = d;
  a.columns_ = std::move(columns);
  a.facets_ = detail::cone_facets(a.columns_, d);
  a.h_ = zero_vec(d);
  for (const auto &f : a.facets_) a.h_ = add(a.h_, f);
  for (const auto &c : a.columns_)
    if (dot(a.h_, c) <= 0)
      throw error(errc::not_pointed, "the cone spanned by the columns contains a line");
  return a;
}

inline auto cone_facets(const Configuration &a) -> std::vector<IntVec> { return a.facet_normals(); }

inline auto face_lattice(const ColumnSet &f, const Configuration &a) -> Sublattice {
  return {a.d(), a.select(f)};
}

// dim of the span of the chosen columns
inline auto span_dim(const ColumnSet &f, const Configuration &a) -> std::size_t {
  return f.empty() ? 0 : rank(a.select(f));
}

// Every face of A, from A itself down to the empty face, ordered by
// decreasing dimension then by index set. Faces are intersections of facet
// supports; the certificate is the sum of the facet normals vanishing on it.
inline auto faces(const Configuration &a) -> std::vector<Face> {
  const std::size_t n = a.n();
  const auto &facets = a.facet_normals();
  std::vector<std::vector<bool>> support;
  for (const auto &phi : facets) {
    std::vector<bool> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = dot(phi, a.column(j)) == 0;
    support.push_back(std::move(z));
  }

  std::set<std::vector<bool>> seen;
  std::deque<std::vector<bool>> queue;
  queue.emplace_back(n, true);
  seen.insert(queue.front());
  while (!queue.empty()) {
    auto m = std::move(queue.front());
    queue.pop_front();
    for (const auto &z : support) {
      std::vector<bool> next(n);
      for (std::size_t j = 0; j < n; ++j) next[j] = m[j] && z[j];
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }

  std::vector<Face> out;
  for (const auto &m : seen) {
    Face f;
    for (std::size_t j = 0; j < n; ++j)
      if (m[j]) f.indices.push_back(j);
    f.normal = zero_vec(a.d());
    for (std::size_t i = 0; i < facets.size(); ++i) {
      bool contains = true;
      for (auto j : f.indices) contains = contains && support[i][j];
      if (contains) f.normal = add(f.normal, facets[i]);
    }
    f.dim = span_dim(f.indices, a);
    f.codim = a.d() - f.dim;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Face &x, const Face &y) {
    if (x.dim != y.dim) return x.dim > y.dim;
    return x.indices < y.indices;
  });
  return out;
}

// Checks the supporting certificate of a claimed face.
inline auto is_certified_face(const Face &f, const Configuration &a) -> bool {
  if (f.normal.size() != a.d()) return false;
  std::size_t k = 0;
  for (std::size_t j = 0; j < a.n(); ++j) {
    const bool in = k < f.indices.size() && f.indices[k] == j;
    if (in) ++k;
    const Int v = dot(f.normal, a.column(j));
    if (in ? v != 0 : v <= 0) return false;
  }
  return k == f.indices.size();
}

inline auto full_face(const Configuration &a) -> Face {
  return {a.all_columns(), zero_vec(a.d()), a.d(), 0};
}

inline auto delta_hull(const ColumnSet &f, const Configuration &a) -> PolytopeHull {
  auto pts = a.select(f);
  pts.push_back(zero_vec(a.d()));
  return hull(pts);
}

enum class DeltaMode { columns, lattice };

// Columns of A (columns mode) or lattice points (lattice mode) in conv(0, F).
// Lattice mode scans the integer bounding box of the vertices.
inline auto delta_cap(const ColumnSet &f, const Configuration &a, DeltaMode mode)
    -> std::vector<IntVec> {
  const auto h = delta_hull(f, a);
  std::vector<IntVec> out;
  if (mode == DeltaMode::columns) {
    for (const auto &c : a.columns())
      if (h.contains(to_rat(c))) out.push_back(c);
    return out;
  }
  const std::size_t d = a.d();
  IntVec lo = zero_vec(d), hi = zero_vec(d);
  for (auto j : f)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], a.column(j)[i]);
      hi[i] = std::max(hi[i], a.column(j)[i]);
    }
  IntVec x = lo;
  for (;;) {
    if (h.contains(to_rat(x))) out.push_back(x);
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++x[i] <= hi[i]) break;
      x[i] = lo[i];
    }
    if (i == d) break;
  }
  return out;
}

inline auto delta_cap_indices(const ColumnSet &f, const Configuration &a) -> ColumnSet {
  const auto h = delta_hull(f, a);
  ColumnSet out;
  for (std::size_t j = 0; j < a.n(); ++j)
    if (h.contains(to_rat(a.column(j)))) out.push_back(j);
  return out;
}

// dim(RF)! * vol(Delta_F) in units of Z^d ∩ QF, divided by [Z^d ∩ QF : lambda].
inline auto normalized_volume(const ColumnSet &f, const Configuration &a, const Sublattice &lambda)
    -> Rat {
  const auto zf = face_lattice(f, a);
  const auto sat = saturate(zf);
  if (lambda.ambient_dim() != a.d() || lambda.rank() != zf.rank() ||
      !is_sublattice(zf, lambda) || !is_sublattice(lambda, sat))
    throw error(errc::lambda_out_of_range, "lattice is not sandwiched between ZF and Z^d ∩ QF");
  const Int index = *lattice_index(lambda, sat);
  if (f.empty()) return Rat(1, index);

  // Delta_F in coordinates of a basis of the saturation: full-dimensional in Z^k
  const std::size_t k = sat.rank();
  std::vector<IntVec> pts{zero_vec(k)};
  for (auto j : f) pts.push_back(*sat.coordinates(a.column(j)));
  return hull(pts).simplex_volume_sum() / index;
}

// vol(A) = vol_{Z^d}(A)
inline auto volume(const Configuration &a) -> Int {
  return numerator(normalized_volume(a.all_columns(), a, Sublattice::full(a.d())));
}

// vol_{Z^d ∩ QF}(F)
inline auto saturated_volume(const ColumnSet &f, const Configuration &a) -> Int {
  return numerator(normalized_volume(f, a, saturate(face_lattice(f, a))));
}

// vol_{ZF}(F)
inline auto lattice_volume(const ColumnSet &f, const Configuration &a) -> Int {
  return numerator(normalized_volume(f, a, face_lattice(f, a)));
}

// A column a outside tau with Delta_{tau+a} ∩ A = tau + a, raising the
// dimension when Delta_tau is not full-dimensional. Replaces the candidate
// by a stray column of its polytope until none is left; ties go to the
// lowest index.
inline auto augment(const ColumnSet &tau, const Configuration &a) -> std::size_t {
  if (tau.size() >= a.n()) throw error(errc::precondition_violated, "tau is all of A");
  if (delta_cap_indices(tau, a) != tau)
    throw error(errc::precondition_violated, "Delta_tau contains a column outside tau");
  const std::size_t dim = span_dim(tau, a);
  auto in_tau = [&](std::size_t j) { return std::binary_search(tau.begin(), tau.end(), j); };
  auto with = [&](std::size_t j) {
    ColumnSet s = tau;
    s.insert(std::upper_bound(s.begin(), s.end(), j), j);
    return s;
  };

  std::optional<std::size_t> cand;
  for (std::size_t j = 0; j < a.n() && !cand; ++j)
    if (!in_tau(j) && (dim == a.d() || span_dim(with(j), a) == dim + 1)) cand = j;

  for (;;) {
    const auto s = with(*cand);
    const auto cap = delta_cap_indices(s, a);
    std::optional<std::size_t> stray;
    for (auto j : cap)
      if (!std::binary_search(s.begin(), s.end(), j)) {
        stray = j;
        break;
      }
    if (!stray) return *cand;
    cand = stray;
  }
}

inline auto pyramid_excess(const Face &f, const Configuration &a) -> Int {
  return Int(a.n()) - Int(f.indices.size()) - Int(f.codim);
}

// n - |F| - codim(F) == 0; in that case Z^d = ZF ⊕ (⊕_{j∉F} Z a_j) must hold.
inline auto is_pyramid(const Face &f, const Configuration &a) -> bool {
  if (pyramid_excess(f, a) != 0) return false;
  std::vector<IntVec> rows = face_lattice(f.indices, a).basis();
  for (std::size_t j = 0; j < a.n(); ++j)
    if (!std::binary_search(f.indices.begin(), f.indices.end(), j)) rows.push_back(a.column(j));
  if (rows.size() != a.d() || abs(determinant(IntMatrix::from_rows(rows, a.d()))) != 1)
    throw error(errc::precondition_violated, "pyramid without a lattice splitting");
  return true;
}

} // namespace gkz
