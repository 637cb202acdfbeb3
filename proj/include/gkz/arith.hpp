#pragma once

// Exact scalar types, vectors over them, and the library error type.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gkz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

enum class errc {
  not_a_sublattice,
  infinite_index,
  dimension_mismatch,
  not_full_rank,
  lattice_not_zd,
  duplicate_or_zero_column,
  not_pointed,
  lambda_out_of_range,
  precondition_violated,
  not_a_face,
  not_simple,
  invalid_spec,
  missing_parameter,
  parse_error,
};

constexpr auto errc_name(errc e) -> std::string_view {
  switch (e) {
  case errc::not_a_sublattice: return "NotASublattice";
  case errc::infinite_index: return "InfiniteIndex";
  case errc::dimension_mismatch: return "DimensionMismatch";
  case errc::not_full_rank: return "NotFullRank";
  case errc::lattice_not_zd: return "LatticeNotZd";
  case errc::duplicate_or_zero_column: return "DuplicateOrZeroColumn";
  case errc::not_pointed: return "NotPointed";
  case errc::lambda_out_of_range: return "LambdaOutOfRange";
  case errc::precondition_violated: return "PreconditionViolated";
  case errc::not_a_face: return "NotAFace";
  case errc::not_simple: return "NotSimple";
  case errc::invalid_spec: return "InvalidSpec";
  case errc::missing_parameter: return "MissingParameter";
  case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  [[nodiscard]] auto code() const noexcept -> errc { return code_; }
  [[nodiscard]] auto name() const -> std::string_view { return errc_name(code_); }

private:
  errc code_;
};

// floor(a / b) for b != 0; cpp_int division truncates toward zero.
inline auto floor_div(const Int &a, const Int &b) -> Int {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// a mod b in [0, |b|).
inline auto floor_mod(const Int &a, const Int &b) -> Int {
  Int r = a % b;
  if (r < 0) r += abs(b);
  return r;
}

inline auto floor(const Rat &r) -> Int {
  return floor_div(numerator(r), denominator(r));
}

// p/q for any nonzero q. boost::rational rejects negative denominators of
// unbounded integers, so the sign is moved to the numerator first.
inline auto make_rat(const Int &p, const Int &q) -> Rat {
  if (q == 0) throw std::domain_error("zero denominator");
  return q < 0 ? Rat(Int(-p), Int(-q)) : Rat(p, q);
}

inline auto is_integral(const Rat &r) -> bool { return denominator(r) == 1; }

inline auto gcd(Int a, Int b) -> Int {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

struct Xgcd {
  Int g, p, q; // g = p*a + q*b, g >= 0
};

inline auto xgcd(const Int &a, const Int &b) -> Xgcd {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    Int t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0 < 0) {
    r0 = -r0; s0 = -s0; t0 = -t0;
  }
  return {r0, s0, t0};
}

inline auto zero_vec(std::size_t n) -> IntVec { return IntVec(n, Int{0}); }

inline auto unit_vec(std::size_t n, std::size_t i) -> IntVec {
  IntVec v = zero_vec(n);
  v[i] = 1;
  return v;
}

inline auto is_zero(const IntVec &v) -> bool {
  return std::all_of(v.begin(), v.end(), [](const Int &x) { return x == 0; });
}

inline auto dot(const IntVec &a, const IntVec &b) -> Int {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline auto dot(const RatVec &a, const RatVec &b) -> Rat {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline auto add(const IntVec &a, const IntVec &b) -> IntVec {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline auto sub(const IntVec &a, const IntVec &b) -> IntVec {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline auto scale(const Int &c, const IntVec &a) -> IntVec {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline auto to_rat(const IntVec &v) -> RatVec {
  RatVec r;
  r.reserve(v.size());
  for (const auto &x : v) r.emplace_back(x);
  return r;
}

// gcd of the entries; 0 for the zero vector.
inline auto content(const IntVec &v) -> Int {
  Int g = 0;
  for (const auto &x : v) g = gcd(g, x);
  return g;
}

inline auto primitive(IntVec v) -> IntVec {
  Int g = content(v);
  if (g > 1)
    for (auto &x : v) x /= g;
  return v;
}

// Clears denominators and divides by the content.
inline auto primitive(const RatVec &v) -> IntVec {
  Int l = 1;
  for (const auto &x : v) {
    const Int &den = denominator(x);
    l = l / gcd(l, den) * den;
  }
  IntVec r;
  r.reserve(v.size());
  for (const auto &x : v) r.push_back(numerator(x) * (l / denominator(x)));
  return primitive(std::move(r));
}

inline auto to_string(const Int &x) -> std::string { return x.str(); }

// Canonical "p/q" with q > 0 and gcd(p, q) = 1.
inline auto to_string(const Rat &x) -> std::string {
  return numerator(x).str() + "/" + denominator(x).str();
}

template <class T> auto to_string(const std::vector<T> &v) -> std::string {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, Rat>) {
      s += is_integral(v[i]) ? numerator(v[i]).str() : to_string(v[i]);
    } else if constexpr (std::is_arithmetic_v<T>) {
      s += std::to_string(v[i]);
    } else {
      s += to_string(v[i]);
    }
  }
  return s + ")";
}

} // namespace gkz
