#pragma once

// The d x (2d-1) family A_{d,b} whose rank/volume ratio at beta = 0 tends to
// d - 1, and the non-Cohen-Macaulay examples with vol(A) = n - d + 2.

#include "gkz/ranking.hpp"

namespace gkz {

struct FamilySpec {
  std::size_t d = 3;
  Int b = 2;
};

inline void check(const FamilySpec &s) {
  if (s.d < 3) throw error(errc::invalid_spec, "family needs d >= 3");
  if (s.b < 2) throw error(errc::invalid_spec, "family needs b >= 2");
}

// Columns e_1..e_{d-1}, e_1+e_d..e_{d-1}+e_d, b e_d.
inline auto build(const FamilySpec &s) -> Configuration {
  check(s);
  std::vector<IntVec> cols;
  for (std::size_t k = 0; k + 1 < s.d; ++k) cols.push_back(unit_vec(s.d, k));
  for (std::size_t k = 0; k + 1 < s.d; ++k) {
    auto c = unit_vec(s.d, k);
    c[s.d - 1] = 1;
    cols.push_back(std::move(c));
  }
  cols.push_back(scale(s.b, unit_vec(s.d, s.d - 1)));
  return validate(std::move(cols));
}

// The face {b e_d}.
inline auto special_face(const Configuration &a) -> Face {
  const ColumnSet want{a.n() - 1};
  for (auto &f : faces(a))
    if (f.indices == want) return f;
  throw error(errc::not_a_face, "last column does not span a face");
}

// (1,0),(1,1),(0,2),(0,3) plus (0,k) for k = 4..n-d+1, raised to a pyramid
// d - 2 times by appending a coordinate and a unit column.
inline auto build_noncm_example(std::size_t d, std::size_t n) -> Configuration {
  if (d < 2 || n < d + 2) throw error(errc::invalid_spec, "need d >= 2 and n >= d + 2");
  std::vector<IntVec> cols{{1, 0}, {1, 1}, {0, 2}, {0, 3}};
  for (std::size_t k = 4; cols.size() < n - (d - 2); ++k) cols.push_back({0, Int(k)});
  for (std::size_t e = 2; e < d; ++e) {
    for (auto &c : cols) c.emplace_back(0);
    cols.push_back(unit_vec(e + 1, e));
  }
  return validate(std::move(cols));
}

struct Line {
  IntVec base;
  IntVec direction;
  friend auto operator==(const Line &, const Line &) -> bool = default;
};

// m e_k + C e_d for k = 1..d-1, m = 0..b-2, the m = 0 line listed once.
inline auto exceptional_lines(const FamilySpec &s) -> std::vector<Line> {
  check(s);
  const IntVec dir = unit_vec(s.d, s.d - 1);
  std::vector<Line> lines{{zero_vec(s.d), dir}};
  for (std::size_t k = 0; k + 1 < s.d; ++k)
    for (Int m = 1; m <= s.b - 2; ++m) lines.push_back({scale(m, unit_vec(s.d, k)), dir});
  return lines;
}

inline auto on_line(const IntVec &x, const Line &l) -> bool {
  // direction is a coordinate axis: all other coordinates must match
  for (std::size_t i = 0; i < x.size(); ++i)
    if (l.direction[i] == 0 && x[i] != l.base[i]) return false;
  return true;
}

// Deterministic integer parameters off every jumping line: coordinates
// drawn from 7, 11, 13, ... shifted by b and the sample index.
inline auto off_line_samples(const FamilySpec &s, std::size_t count) -> std::vector<IntVec> {
  static constexpr int seeds[] = {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < count; ++i) {
    IntVec beta(s.d);
    for (std::size_t k = 0; k < s.d; ++k)
      beta[k] = s.b + seeds[k % std::size(seeds)] * Int(i + 1) + Int(k * i);
    out.push_back(std::move(beta));
  }
  return out;
}

struct LineCheck {
  std::size_t k = 0; // 1-based coordinate of the base point
  Int m;
  Int rank;
  Int expected;
};

struct FamilyReport {
  FamilySpec spec;
  Int computed_vol, expected_vol;
  Int computed_max_rank, expected_max_rank;
  bool max_simple_for_special_face = false;
  std::vector<Line> exceptional;
  std::vector<LineCheck> line_checks; // m = 0..b-1; the jump must vanish at m = b-1
  std::vector<std::pair<IntVec, Int>> off_line; // (beta, rank)
  Rat ratio;
  bool all_match = false;
};

inline auto expected_volume(const FamilySpec &s) -> Int { return s.b + Int(s.d) - 1; }
inline auto expected_max_rank(const FamilySpec &s) -> Int { return Int(s.d - 1) * s.b + 1; }
inline auto expected_ratio(const FamilySpec &s) -> Rat {
  return {expected_max_rank(s), expected_volume(s)};
}

// Runs the general engine on A_{d,b} and compares with the closed forms.
// `line_checks` covers every base point m e_k with 0 <= m <= b-1.
inline auto verify(const FamilySpec &s, std::size_t beta_samples, bool scan_lines = true)
    -> FamilyReport {
  const auto a = build(s);
  const auto fb = special_face(a);
  FamilyReport r;
  r.spec = s;
  r.expected_vol = expected_volume(s);
  r.expected_max_rank = expected_max_rank(s);
  r.computed_vol = volume(a);
  r.exceptional = exceptional_lines(s);

  const auto top = analyze(Parameter::integral(zero_vec(s.d)), a);
  r.max_simple_for_special_face = top.simple_face && *top.simple_face == fb;
  r.computed_max_rank = top.rank.value_or(Int(-1));
  bool ok = r.computed_vol == r.expected_vol && r.computed_max_rank == r.expected_max_rank &&
            r.max_simple_for_special_face;

  if (scan_lines) {
    for (std::size_t k = 0; k + 1 < s.d; ++k)
      for (Int m = 1; m <= s.b - 1; ++m) {
        const auto rep = analyze(Parameter::integral(scale(m, unit_vec(s.d, k))), a);
        LineCheck c{k + 1, m, rep.rank.value_or(Int(-1)),
                    r.computed_vol + (s.b - 1 - m) * Int(s.d - 2)};
        ok = ok && rep.simple_face && c.rank == c.expected;
        r.line_checks.push_back(std::move(c));
      }
  }
  for (auto &beta : off_line_samples(s, beta_samples)) {
    const auto rep = analyze(Parameter::integral(beta), a);
    const Int rank = rep.rank.value_or(Int(-1));
    ok = ok && rank == r.computed_vol;
    r.off_line.emplace_back(std::move(beta), rank);
  }
  r.ratio = Rat(r.computed_max_rank, r.computed_vol);
  r.all_match = ok && r.ratio == expected_ratio(s);
  return r;
}

} // namespace gkz
