#pragma once

// Integer lattices: Hermite and Smith normal forms, saturation, indices and
// coset representatives.

#include "gkz/matrix.hpp"

#include <map>
#include <optional>

namespace gkz {

struct HermiteForm {
  IntMatrix h;                      // row Hermite normal form, h = u * m
  IntMatrix u;                      // unimodular
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row of h
};

// Row-style HNF by extended-gcd elimination. Nonzero rows come first, pivots
// are positive and the entries above each pivot lie in [0, pivot).
inline auto hermite_normal_form(const IntMatrix &m) -> HermiteForm {
  HermiteForm hf{m, IntMatrix::identity(m.rows()), {}};
  auto &h = hf.h;
  auto &u = hf.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, i);
        u.swap_rows(r, i);
        continue;
      }
      const Int a = h(r, c), b = h(i, c);
      const auto [g, p, q] = xgcd(a, b);
      const Int bg = b / g, ag = a / g;
      h.combine_rows(r, i, p, q, -bg, ag);
      u.combine_rows(r, i, p, q, -bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      const Int f = floor_div(h(k, c), h(r, c));
      h.add_row(k, r, -f);
      u.add_row(k, r, -f);
    }
    hf.pivots.push_back(c);
    ++r;
  }
  return hf;
}

struct SmithForm {
  IntMatrix s; // diagonal, s = u * m * v, d_1 | d_2 | ...
  IntMatrix u;
  IntMatrix v;
  // Nonzero diagonal entries in order.
  [[nodiscard]] auto invariant_factors() const -> IntVec {
    IntVec d;
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()) && s(i, i) != 0; ++i)
      d.push_back(s(i, i));
    return d;
  }
};

inline auto smith_normal_form(const IntMatrix &m) -> SmithForm {
  SmithForm sf{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  auto &s = sf.s;
  const std::size_t rows = s.rows(), cols = s.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
            best = {i, j};
      if (!best) return sf;
      s.swap_rows(t, best->first);
      sf.u.swap_rows(t, best->first);
      s.swap_cols(t, best->second);
      sf.v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Int q = floor_div(s(i, t), s(t, t));
        s.add_row(i, t, -q);
        sf.u.add_row(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Int q = floor_div(s(t, j), s(t, t));
        s.add_col(j, t, -q);
        sf.v.add_col(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            s.add_row(t, i, 1);
            sf.u.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      sf.u.negate_row(t);
    }
  }
  return sf;
}

// Basis of {x in Z^cols : row . x = 0 for every row}. The result is saturated.
inline auto integer_kernel(const std::vector<IntVec> &rows, std::size_t cols)
    -> std::vector<IntVec> {
  if (rows.empty()) return IntMatrix::identity(cols).row_list();
  const auto hf = hermite_normal_form(IntMatrix::from_rows(rows, cols).transpose());
  std::vector<IntVec> basis;
  for (std::size_t i = hf.pivots.size(); i < cols; ++i) basis.push_back(hf.u.row(i));
  return basis;
}

// Immutable lattice given by generators in Z^d. The basis is the nonzero part
// of the row HNF of the generator matrix.
class Sublattice {
public:
  Sublattice() = default;
  Sublattice(std::size_t ambient_dim, std::vector<IntVec> generators)
      : dim_(ambient_dim), generators_(std::move(generators)) {
    for (const auto &g : generators_)
      if (g.size() != dim_) throw error(errc::dimension_mismatch, "generator dimension");
    auto hf = hermite_normal_form(IntMatrix::from_rows(generators_, dim_));
    pivots_ = hf.pivots;
    for (std::size_t i = 0; i < pivots_.size(); ++i) basis_.push_back(hf.h.row(i));
  }

  static auto full(std::size_t d) -> Sublattice {
    return {d, IntMatrix::identity(d).row_list()};
  }

  [[nodiscard]] auto ambient_dim() const noexcept -> std::size_t { return dim_; }
  [[nodiscard]] auto generators() const noexcept -> const std::vector<IntVec> & {
    return generators_;
  }
  [[nodiscard]] auto basis() const noexcept -> const std::vector<IntVec> & { return basis_; }
  [[nodiscard]] auto rank() const noexcept -> std::size_t { return basis_.size(); }
  [[nodiscard]] auto pivots() const noexcept -> const std::vector<std::size_t> & {
    return pivots_;
  }

  // Integer coordinates of v in the basis, or nullopt when v is not in the lattice.
  [[nodiscard]] auto coordinates(const IntVec &v) const -> std::optional<IntVec> {
    if (v.size() != dim_) throw error(errc::dimension_mismatch, "vector dimension");
    IntVec rest = v;
    IntVec x(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Int &p = basis_[i][pivots_[i]];
      if (rest[pivots_[i]] % p != 0) return std::nullopt;
      x[i] = rest[pivots_[i]] / p;
      for (std::size_t j = pivots_[i]; j < dim_; ++j) rest[j] -= x[i] * basis_[i][j];
    }
    if (!is_zero(rest)) return std::nullopt;
    return x;
  }

  [[nodiscard]] auto contains(const IntVec &v) const -> bool {
    return coordinates(v).has_value();
  }

  // Canonical representative of v + L: the pivot coordinates are reduced
  // into [0, pivot).
  [[nodiscard]] auto reduce(IntVec v) const -> IntVec {
    if (v.size() != dim_) throw error(errc::dimension_mismatch, "vector dimension");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Int f = floor_div(v[pivots_[i]], basis_[i][pivots_[i]]);
      if (f == 0) continue;
      for (std::size_t j = pivots_[i]; j < dim_; ++j) v[j] -= f * basis_[i][j];
    }
    return v;
  }

  // Same lattice (mutual containment).
  [[nodiscard]] auto equals(const Sublattice &o) const -> bool {
    return dim_ == o.dim_ && basis_ == o.basis_;
  }

private:
  std::size_t dim_ = 0;
  std::vector<IntVec> generators_;
  std::vector<IntVec> basis_;
  std::vector<std::size_t> pivots_;
};

inline auto member(const IntVec &v, const Sublattice &l) -> bool {
  if (v.size() != l.ambient_dim()) throw error(errc::dimension_mismatch, "member: dimension");
  return l.contains(v);
}

// Z^d intersected with the rational span of l.
inline auto saturate(const Sublattice &l) -> Sublattice {
  const auto d = l.ambient_dim();
  return {d, integer_kernel(integer_kernel(l.basis(), d), d)};
}

inline auto is_sublattice(const Sublattice &sub, const Sublattice &sup) -> bool {
  if (sub.ambient_dim() != sup.ambient_dim()) return false;
  return std::all_of(sub.basis().begin(), sub.basis().end(),
                     [&](const IntVec &g) { return sup.contains(g); });
}

namespace detail {
inline auto coordinate_matrix(const Sublattice &sub, const Sublattice &sup) -> IntMatrix {
  std::vector<IntVec> rows;
  for (const auto &g : sub.basis()) rows.push_back(*sup.coordinates(g));
  return IntMatrix::from_rows(rows, sup.rank());
}

inline void require_sublattice(const Sublattice &sub, const Sublattice &sup) {
  if (sub.ambient_dim() != sup.ambient_dim())
    throw error(errc::dimension_mismatch, "lattices live in different ambient spaces");
  if (!is_sublattice(sub, sup))
    throw error(errc::not_a_sublattice, "a generator lies outside the super-lattice");
}
} // namespace detail

// [sup : sub], or nullopt when the index is infinite (ranks differ).
inline auto lattice_index(const Sublattice &sub, const Sublattice &sup) -> std::optional<Int> {
  detail::require_sublattice(sub, sup);
  if (sub.rank() != sup.rank()) return std::nullopt;
  if (sub.rank() == 0) return Int{1};
  return abs(determinant(detail::coordinate_matrix(sub, sup)));
}

struct CosetSet {
  Sublattice sublattice;
  Sublattice ambient;
  std::vector<IntVec> representatives; // sorted lexicographically
};

// One point of sup per coset of sub, each in the half-open fundamental
// parallelepiped of sub's basis.
inline auto coset_representatives(const Sublattice &sub, const Sublattice &sup) -> CosetSet {
  detail::require_sublattice(sub, sup);
  if (sub.rank() != sup.rank())
    throw error(errc::infinite_index, "sublattice has lower rank than the super-lattice");
  const std::size_t r = sup.rank(), d = sup.ambient_dim();
  CosetSet cs{sub, sup, {}};
  if (r == 0) {
    cs.representatives.push_back(zero_vec(d));
    return cs;
  }
  // HNF of the coordinate matrix is upper triangular with diagonal h_ii; the
  // box prod [0, h_ii) is a transversal of Z^r / sub.
  const auto hf = hermite_normal_form(detail::coordinate_matrix(sub, sup));
  IntVec diag(r);
  for (std::size_t i = 0; i < r; ++i) diag[i] = hf.h(i, i);
  const auto sub_rows = to_rat(sub.basis());

  IntVec k = zero_vec(r);
  for (;;) {
    IntVec x = zero_vec(d);
    for (std::size_t i = 0; i < r; ++i)
      if (k[i] != 0) x = add(x, scale(k[i], sup.basis()[i]));
    const auto lambda = *solve_left(sub_rows, to_rat(x));
    for (std::size_t i = 0; i < r; ++i) {
      const Int f = floor(lambda[i]);
      if (f != 0) x = gkz::sub(x, scale(f, sub.basis()[i]));
    }
    cs.representatives.push_back(std::move(x));

    std::size_t i = 0;
    for (; i < r; ++i) {
      if (++k[i] < diag[i]) break;
      k[i] = 0;
    }
    if (i == r) break;
  }
  std::sort(cs.representatives.begin(), cs.representatives.end());
  return cs;
}

} // namespace gkz
