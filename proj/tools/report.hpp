#pragma once

// JSON/text serialization of engine results and the matrix file format.
// Exact values are written as decimal strings; rationals as "p/q".

#include "gkz/gkz.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace gkz::report {

using nlohmann::json;

inline constexpr int schema_version = 1;

inline auto schema(std::string_view kind) -> std::string {
  return "gkzrank." + std::string(kind) + "/" + std::to_string(schema_version);
}

inline auto str(const Int &x) -> json { return x.str(); }
inline auto str(const Rat &x) -> json { return to_string(x); }

inline auto vec(const IntVec &v) -> json {
  json j = json::array();
  for (const auto &x : v) j.push_back(x.str());
  return j;
}

inline auto vec(const RatVec &v) -> json {
  json j = json::array();
  for (const auto &x : v) j.push_back(to_string(x));
  return j;
}

inline auto vecs(const std::vector<IntVec> &vs) -> json {
  json j = json::array();
  for (const auto &v : vs) j.push_back(vec(v));
  return j;
}

// 1-based column indices
inline auto indices(const ColumnSet &s) -> json {
  json j = json::array();
  for (auto i : s) j.push_back(i + 1);
  return j;
}

// ---- parsing ---------------------------------------------------------------

inline auto parse_int(const std::string &s) -> Int {
  static const std::regex re(R"(\s*[+-]?\d+\s*)");
  if (!std::regex_match(s, re)) throw error(errc::parse_error, "not an integer: '" + s + "'");
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '+' && c != '\t') t += c;
  return Int(t);
}

inline auto parse_rat(const std::string &s) -> Rat {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  const Int num = parse_int(s.substr(0, slash));
  const Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw error(errc::parse_error, "zero denominator in '" + s + "'");
  return make_rat(num, den);
}

inline auto split(const std::string &s, char sep) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "p/q,r,..." -> beta
inline auto parse_beta(const std::string &s) -> Parameter {
  Parameter p;
  for (const auto &tok : split(s, ',')) p.beta.push_back(parse_rat(tok));
  if (p.beta.empty()) throw error(errc::parse_error, "empty parameter vector");
  return p;
}

// "1,0;1,1;0,2" -> columns
inline auto parse_columns(const std::string &s) -> std::vector<IntVec> {
  std::vector<IntVec> cols;
  for (const auto &c : split(s, ';')) {
    IntVec v;
    for (const auto &tok : split(c, ',')) v.push_back(parse_int(tok));
    cols.push_back(std::move(v));
  }
  return cols;
}

// "lo..hi" per coordinate, comma separated; a single range applies to all.
inline auto parse_box(const std::string &s, std::size_t d) -> IntBox {
  IntBox box;
  auto ranges = split(s, ',');
  if (ranges.size() == 1) ranges.assign(d, ranges.front());
  if (ranges.size() != d) throw error(errc::dimension_mismatch, "box has wrong dimension");
  for (const auto &r : ranges) {
    const auto dots = r.find("..");
    if (dots == std::string::npos) throw error(errc::parse_error, "box range needs lo..hi: '" + r + "'");
    box.lo.push_back(parse_int(r.substr(0, dots)));
    box.hi.push_back(parse_int(r.substr(dots + 2)));
  }
  return box;
}

// "a..b" or "a" -> inclusive range
inline auto parse_range(const std::string &s) -> std::pair<long long, long long> {
  const auto dots = s.find("..");
  auto to_ll = [](const std::string &t) { return parse_int(t).convert_to<long long>(); };
  if (dots == std::string::npos) {
    const auto v = to_ll(s);
    return {v, v};
  }
  return {to_ll(s.substr(0, dots)), to_ll(s.substr(dots + 2))};
}

// ---- matrix file -----------------------------------------------------------

inline const Int max_safe_json_int = (Int(1) << 53) - 1;

inline auto json_to_int(const json &j) -> Int {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw error(errc::parse_error, "matrix entry must be an integer or an integer string");
}

// {"columns": [[...], ...]}; entries are numbers when |x| <= 2^53-1, strings otherwise.
inline auto matrix_to_json(const std::vector<IntVec> &cols) -> json {
  json c = json::array();
  for (const auto &v : cols) {
    json col = json::array();
    for (const auto &x : v) {
      if (abs(x) <= max_safe_json_int) col.push_back(x.convert_to<long long>());
      else col.push_back(x.str());
    }
    c.push_back(std::move(col));
  }
  return json{{"columns", std::move(c)}};
}

inline auto matrix_from_json(const json &j) -> std::vector<IntVec> {
  if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array())
    throw error(errc::parse_error, "matrix file must be an object with a \"columns\" array");
  std::vector<IntVec> cols;
  for (const auto &c : j["columns"]) {
    if (!c.is_array()) throw error(errc::parse_error, "each column must be an array");
    IntVec v;
    for (const auto &x : c) v.push_back(json_to_int(x));
    cols.push_back(std::move(v));
  }
  return cols;
}

// ---- engine results --------------------------------------------------------

inline auto face_json(const Face &f, const Configuration &a) -> json {
  return json{{"indices", indices(f.indices)},
              {"normal", vec(f.normal)},
              {"dim", f.dim},
              {"codim", f.codim},
              {"vol_lattice", str(lattice_volume(f.indices, a))},
              {"vol_saturated", str(saturated_volume(f.indices, a))},
              {"lower_bound", str(volume_lower_bound(f, a))},
              {"is_pyramid", is_pyramid(f, a)}};
}

inline auto pairs_json(const std::vector<RankingPair> &pairs) -> json {
  json j = json::array();
  for (const auto &p : pairs)
    j.push_back(json{{"face", indices(p.face.indices)}, {"codim", p.face.codim}, {"rep", vec(p.rep)}});
  return j;
}

inline auto bound_json(const BoundCheck &b) -> json {
  json j{{"applicable", b.applicable}, {"holds", b.holds()}, {"strict", b.strict}};
  if (b.applicable) {
    j["value"] = str(b.value);
    j["bound"] = str(b.bound);
    j["slack"] = str(b.slack);
  }
  return j;
}

inline auto bounds_json(const RankBounds &b) -> json {
  return json{{"codim_bound", bound_json(b.codim_bound)},
              {"sharper_bound", bound_json(b.sharper_bound)},
              {"ratio_bound", bound_json(b.ratio_bound)},
              {"all_hold", b.all_hold()}};
}

inline auto rank_json(const RankReport &r) -> json {
  json j{{"schema", schema("rank")},
         {"beta", vec(r.beta.beta)},
         {"vol", str(r.volume)},
         {"pairs", pairs_json(r.pairs)},
         {"maximal_pairs", pairs_json(r.maximal)},
         {"simple", r.simple_face.has_value()}};
  if (r.simple_face) {
    j["simple_face"] = indices(r.simple_face->indices);
    j["simple_face_codim"] = r.simple_face->codim;
    j["b_count"] = str(r.b_count);
    j["face_volume"] = str(r.face_volume);
    j["rank"] = str(*r.rank);
    j["jump"] = str(*r.jump());
  } else {
    j["simple_face"] = nullptr;
    j["rank"] = "unknown (not simple)";
  }
  if (r.bounds) j["bounds"] = bounds_json(*r.bounds);
  return j;
}

inline auto family_json(const FamilyReport &r) -> json {
  json lines = json::array();
  for (const auto &l : r.exceptional) lines.push_back(json{{"base", vec(l.base)}, {"direction", vec(l.direction)}});
  json checks = json::array();
  for (const auto &c : r.line_checks)
    checks.push_back(json{{"k", c.k}, {"m", str(c.m)}, {"rank", str(c.rank)}, {"expected", str(c.expected)}});
  json off = json::array();
  for (const auto &[beta, rank] : r.off_line) off.push_back(json{{"beta", vec(beta)}, {"rank", str(rank)}});
  return json{{"schema", schema("family")},
              {"d", r.spec.d},
              {"b", str(r.spec.b)},
              {"computed_vol", str(r.computed_vol)},
              {"expected_vol", str(r.expected_vol)},
              {"computed_max_rank", str(r.computed_max_rank)},
              {"expected_max_rank", str(r.expected_max_rank)},
              {"max_simple_for_special_face", r.max_simple_for_special_face},
              {"exceptional_lines", std::move(lines)},
              {"line_checks", std::move(checks)},
              {"off_line", std::move(off)},
              {"ratio", str(r.ratio)},
              {"all_match", r.all_match}};
}

inline auto error_json(const error &e) -> json {
  json j{{"schema", schema("error")}, {"error", std::string(e.name())}, {"message", e.what()}};
  if (const auto *ns = dynamic_cast<const not_simple_error *>(&e)) j["report"] = rank_json(ns->report());
  return j;
}

} // namespace gkz::report
