#pragma once

// Ranking lattices of A at a rational parameter beta, simpleness, and the
// closed-form holonomic rank for simple parameters together with the
// volume/rank inequalities it must satisfy.

#include "gkz/semigroup.hpp"

namespace gkz {

struct Parameter {
  RatVec beta;

  static auto integral(const IntVec &v) -> Parameter { return {to_rat(v)}; }
  [[nodiscard]] auto size() const noexcept -> std::size_t { return beta.size(); }
};

struct RankingPair {
  Face face;
  IntVec rep; // canonical representative of rep + ZF
};

namespace detail {

// An integer point of beta + QF, or nullopt when the flat misses Z^d. Uses a
// unimodular basis whose leading rows span the saturation of ZF.
inline auto integer_point_on_flat(const RatVec &beta, const Sublattice &sat)
    -> std::optional<IntVec> {
  const std::size_t d = sat.ambient_dim(), k = sat.rank();
  const auto sf = smith_normal_form(IntMatrix::from_rows(sat.basis(), d));
  const IntMatrix w = unimodular_inverse(sf.v); // rows: basis of Z^d, first k span sat
  RatVec c(d, Rat{0});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c[j] += beta[i] * Rat(sf.v(i, j));
  IntVec point = zero_vec(d);
  for (std::size_t i = k; i < d; ++i) {
    if (!is_integral(c[i])) return std::nullopt;
    point = add(point, scale(numerator(c[i]), w.row(i)));
  }
  return point;
}

} // namespace detail

// Representatives of the translates of ZF inside Z^d ∩ (beta + QF) that miss
// NA + ZF. At most [Z^d ∩ QF : ZF] of them.
inline auto b_f_beta(const Parameter &beta, QuotientSemigroup &q, const Configuration &a)
    -> std::vector<IntVec> {
  if (beta.size() != a.d()) throw error(errc::dimension_mismatch, "parameter dimension");
  const auto zf = face_lattice(q.face().indices, a);
  const auto sat = saturate(zf);
  const auto base = detail::integer_point_on_flat(beta.beta, sat);
  if (!base) return {};
  std::vector<IntVec> out;
  for (const auto &t : coset_representatives(zf, sat).representatives) {
    IntVec c = add(*base, t);
    if (!q.contains(c)) out.push_back(zf.reduce(std::move(c)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline auto b_f_beta(const Parameter &beta, const Face &f, const Configuration &a)
    -> std::vector<IntVec> {
  QuotientSemigroup q(a, f);
  return b_f_beta(beta, q, a);
}

inline auto ranking_pairs(const Parameter &beta, const Configuration &a)
    -> std::vector<RankingPair> {
  std::vector<RankingPair> pairs;
  for (const auto &f : faces(a)) {
    QuotientSemigroup q(a, f);
    for (auto &b : b_f_beta(beta, q, a)) pairs.push_back({f, std::move(b)});
  }
  return pairs;
}

// Pairs whose translate b + ZF is not strictly inside another pair's.
inline auto maximal_pairs(const std::vector<RankingPair> &pairs, const Configuration &a)
    -> std::vector<RankingPair> {
  std::vector<Sublattice> lat;
  lat.reserve(pairs.size());
  for (const auto &p : pairs) lat.push_back(face_lattice(p.face.indices, a));
  auto inside = [&](std::size_t i, std::size_t j) {
    return is_sublattice(lat[i], lat[j]) && lat[j].contains(gkz::sub(pairs[i].rep, pairs[j].rep));
  };
  std::vector<RankingPair> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pairs.size() && !dominated; ++j)
      dominated = j != i && inside(i, j) && !inside(j, i);
    if (!dominated) out.push_back(pairs[i]);
  }
  return out;
}

// The face shared by all maximal pairs; the full face when there are no
// pairs at all; nullopt when the maximal pairs involve several faces.
inline auto simple_face(const std::vector<RankingPair> &maximal, const Configuration &a)
    -> std::optional<Face> {
  if (maximal.empty()) return full_face(a);
  for (const auto &p : maximal)
    if (!(p.face == maximal.front().face)) return std::nullopt;
  return maximal.front().face;
}

inline auto is_simple(const Parameter &beta, const Configuration &a) -> std::optional<Face> {
  return simple_face(maximal_pairs(ranking_pairs(beta, a), a), a);
}

struct BoundCheck {
  bool applicable = false;
  Rat value;   // the quantity being bounded
  Rat bound;
  Rat slack;   // bound - value
  bool strict = false;
  [[nodiscard]] auto holds() const -> bool {
    return !applicable || (strict ? slack > 0 : slack >= 0);
  }
};

struct RankBounds {
  BoundCheck codim_bound;   // rank <= codim(G) vol(A)
  BoundCheck sharper_bound; // rank <= codim(G) vol(A) - (codim(G)-1)(n-|G|-codim(G))
  BoundCheck ratio_bound;   // rank / vol(A) < d - 1 when the rank jumps
  [[nodiscard]] auto all_hold() const -> bool {
    return codim_bound.holds() && sharper_bound.holds() && ratio_bound.holds();
  }
};

struct RankReport {
  Parameter beta;
  Int volume;
  std::vector<RankingPair> pairs;
  std::vector<RankingPair> maximal;
  std::optional<Face> simple_face;
  Int b_count = 0;
  Int face_volume = 0; // vol_{ZG}(G)
  std::optional<Int> rank;
  std::optional<RankBounds> bounds;

  [[nodiscard]] auto jump() const -> std::optional<Int> {
    if (!rank) return std::nullopt;
    return *rank - volume;
  }
};

class not_simple_error : public error {
public:
  explicit not_simple_error(RankReport r)
      : error(errc::not_simple, "parameter is not simple; the closed rank formula does not apply"),
        report_(std::move(r)) {}
  [[nodiscard]] auto report() const noexcept -> const RankReport & { return report_; }

private:
  RankReport report_;
};

inline auto evaluate_bounds(const Int &rank, const Int &vol, const Face &g,
                            const Configuration &a) -> RankBounds {
  RankBounds b;
  const bool jumping = rank > vol;
  const Int codim = g.codim;
  if (codim > 0) {
    b.codim_bound = {true, Rat(rank), Rat(codim * vol), Rat(codim * vol - rank), false};
    const Int sharp = codim * vol - (codim - 1) * pyramid_excess(g, a);
    b.sharper_bound = {true, Rat(rank), Rat(sharp), Rat(sharp - rank), false};
  }
  if (jumping) {
    const Rat ratio(rank, vol);
    const Rat limit(static_cast<long long>(a.d()) - 1);
    b.ratio_bound = {true, ratio, limit, limit - ratio, true};
  }
  return b;
}

// Ranking data, simpleness and (for simple parameters) the rank
//   vol(A) + |B_G| (codim(G) - 1) vol_{ZG}(G).
// Never throws NotSimple: rank stays empty instead.
inline auto analyze(const Parameter &beta, const Configuration &a) -> RankReport {
  if (beta.size() != a.d()) throw error(errc::dimension_mismatch, "parameter dimension");
  RankReport r;
  r.beta = beta;
  r.volume = volume(a);
  r.pairs = ranking_pairs(beta, a);
  r.maximal = maximal_pairs(r.pairs, a);
  r.simple_face = simple_face(r.maximal, a);
  if (!r.simple_face) return r;
  const Face &g = *r.simple_face;
  if (r.pairs.empty()) {
    r.rank = r.volume;
  } else {
    for (const auto &p : r.pairs)
      if (p.face == g) ++r.b_count;
    r.face_volume = lattice_volume(g.indices, a);
    r.rank = r.volume + r.b_count * (Int(g.codim) - 1) * r.face_volume;
  }
  if (a.d() >= 3) r.bounds = evaluate_bounds(*r.rank, r.volume, g, a);
  return r;
}

inline auto rank_simple(const Parameter &beta, const Configuration &a) -> RankReport {
  auto r = analyze(beta, a);
  if (!r.rank) throw not_simple_error(std::move(r));
  return r;
}

// Inequality checks for a parameter simple for g (d >= 3).
inline auto rank_bounds(const Parameter &beta, const Face &g, const Configuration &a)
    -> RankBounds {
  if (a.d() < 3) throw error(errc::precondition_violated, "rank bounds need d >= 3");
  const auto r = rank_simple(beta, a);
  if (!(*r.simple_face == g))
    throw error(errc::precondition_violated, "parameter is not simple for the given face");
  return *r.bounds;
}

// vol_{Z^d ∩ QF}(F) + n - |F| - codim(F), a lower bound for vol(A).
inline auto volume_lower_bound(const Face &f, const Configuration &a) -> Int {
  return saturated_volume(f.indices, a) + pyramid_excess(f, a);
}

} // namespace gkz
