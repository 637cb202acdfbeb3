#pragma once

// gkzrank command dispatch. `run` never exits the process: it returns the
// exit status (0 ok, 2 precondition violation, 1 internal or IO error) and
// writes the report to `out` (or the --out file) and errors to `err`.

#include "report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <map>

namespace gkz::cli {

using report::json;

enum class Format { json, text };

struct Request {
  std::string command;
  std::string matrix_path;
  std::string columns; // inline "1,0;1,1;..."
  std::optional<std::string> beta;
  std::optional<std::string> box;
  std::optional<std::string> face;
  Format format = Format::json;
  std::string out_path;
  std::string d_range = "3";
  std::string b_range = "2";
  std::size_t samples = 20;
  bool scan_lines = true;
};

inline auto default_format() -> Format {
  const char *env = std::getenv("GKZRANK_FORMAT");
  if (env && std::string_view(env) == "text") return Format::text;
  return Format::json;
}

namespace detail {

inline auto load_configuration(const Request &r) -> Configuration {
  if (!r.columns.empty()) return validate(report::parse_columns(r.columns));
  if (r.matrix_path.empty())
    throw error(errc::missing_parameter, "configuration required: --matrix FILE or --columns");
  std::ifstream in(r.matrix_path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + r.matrix_path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error &e) {
    throw error(errc::parse_error, std::string("matrix file: ") + e.what());
  }
  return validate(report::matrix_from_json(j));
}

inline auto require_beta(const Request &r, const Configuration &a) -> Parameter {
  if (!r.beta) throw error(errc::missing_parameter, "command '" + r.command + "' needs --beta");
  auto p = report::parse_beta(*r.beta);
  if (p.size() != a.d()) throw error(errc::dimension_mismatch, "beta has wrong dimension");
  return p;
}

inline auto find_face(const std::string &spec, const Configuration &a) -> Face {
  ColumnSet want;
  for (const auto &tok : report::split(spec, ',')) {
    const Int i = report::parse_int(tok);
    if (i < 1 || i > Int(a.n())) throw error(errc::not_a_face, "column index out of range");
    want.push_back(i.convert_to<std::size_t>() - 1);
  }
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  for (auto &f : faces(a))
    if (f.indices == want) return f;
  throw error(errc::not_a_face, "columns " + spec + " do not span a face");
}

inline auto line(std::ostream &os, std::string_view key, const std::string &value) {
  os << key << ": " << value << '\n';
}

inline auto idx_string(const ColumnSet &s) -> std::string {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

// ---- commands: each returns (json, text) ----------------------------------

struct Output {
  json j;
  std::string text;
};

inline auto cmd_info(const Configuration &a) -> Output {
  json j{{"schema", report::schema("info")},
         {"d", a.d()},
         {"n", a.n()},
         {"matrix", report::matrix_to_json(a.columns())},
         {"positivity_functional", report::vec(a.positivity_functional())},
         {"facets", report::vecs(a.facet_normals())},
         {"face_count", faces(a).size()},
         {"vol", report::str(volume(a))}};
  std::ostringstream t;
  line(t, "d", std::to_string(a.d()));
  line(t, "n", std::to_string(a.n()));
  line(t, "columns", to_string(a.columns()));
  line(t, "positivity functional", to_string(a.positivity_functional()));
  line(t, "facet normals", to_string(a.facet_normals()));
  line(t, "faces", std::to_string(faces(a).size()));
  line(t, "vol", volume(a).str());
  return {std::move(j), t.str()};
}

inline auto cmd_volume(const Request &r, const Configuration &a) -> Output {
  json j{{"schema", report::schema("volume")}, {"vol", report::str(volume(a))}};
  std::ostringstream t;
  line(t, "vol", volume(a).str());
  if (r.face) {
    const auto f = find_face(*r.face, a);
    j["face"] = report::face_json(f, a);
    line(t, "face", idx_string(f.indices));
    line(t, "vol over ZF", lattice_volume(f.indices, a).str());
    line(t, "vol over saturation", saturated_volume(f.indices, a).str());
    line(t, "lower bound", volume_lower_bound(f, a).str());
  }
  return {std::move(j), t.str()};
}

inline auto cmd_faces(const Configuration &a) -> Output {
  json list = json::array();
  std::ostringstream t;
  for (const auto &f : faces(a)) {
    list.push_back(report::face_json(f, a));
    t << idx_string(f.indices) << " dim " << f.dim << " normal " << to_string(f.normal)
      << " volZF " << lattice_volume(f.indices, a) << " lower_bound " << volume_lower_bound(f, a)
      << (is_pyramid(f, a) ? " pyramid" : "") << '\n';
  }
  return {json{{"schema", report::schema("faces")}, {"vol", report::str(volume(a))}, {"faces", list}},
          t.str()};
}

inline auto cmd_normality(const Configuration &a) -> Output {
  const auto hb = hilbert_basis(a);
  MembershipIndex idx(a);
  std::vector<IntVec> missing;
  for (const auto &v : hb)
    if (!idx.contains(v)) missing.push_back(v);
  json j{{"schema", report::schema("normality")},
         {"hilbert_basis", report::vecs(hb)},
         {"normal", missing.empty()},
         {"missing", report::vecs(missing)},
         {"vol", report::str(volume(a))}};
  std::ostringstream t;
  line(t, "hilbert basis", to_string(hb));
  line(t, "normal", missing.empty() ? "yes" : "no");
  if (!missing.empty()) line(t, "not in NA", to_string(missing));
  return {std::move(j), t.str()};
}

inline auto cmd_holes(const Request &r, const Configuration &a) -> Output {
  if (!r.box) throw error(errc::missing_parameter, "holes needs --box");
  const auto rep = holes_in_box(a, report::parse_box(*r.box, a.d()));
  json j{{"schema", report::schema("holes")},
         {"box", json{{"lo", report::vec(rep.box.lo)}, {"hi", report::vec(rep.box.hi)}}},
         {"holes", report::vecs(rep.holes)}};
  std::ostringstream t;
  line(t, "holes", std::to_string(rep.holes.size()));
  for (const auto &h : rep.holes) t << "  " << to_string(h) << '\n';
  return {std::move(j), t.str()};
}

inline auto rank_text(const RankReport &r) -> std::string {
  std::ostringstream t;
  line(t, "beta", to_string(r.beta.beta));
  line(t, "vol", r.volume.str());
  line(t, "ranking pairs", std::to_string(r.pairs.size()));
  for (const auto &p : r.pairs) t << "  " << idx_string(p.face.indices) << " + " << to_string(p.rep) << '\n';
  if (r.simple_face) {
    line(t, "simple face", idx_string(r.simple_face->indices));
    line(t, "rank", r.rank->str());
  } else {
    line(t, "rank", "unknown (not simple)");
  }
  return t.str();
}

inline auto cmd_rank(const Request &r, const Configuration &a) -> Output {
  const auto rep = rank_simple(require_beta(r, a), a);
  return {report::rank_json(rep), rank_text(rep)};
}

inline auto cmd_bounds(const Request &r, const Configuration &a) -> Output {
  if (a.d() < 3) throw error(errc::precondition_violated, "rank bounds need d >= 3");
  const auto rep = rank_simple(require_beta(r, a), a);
  const auto &b = *rep.bounds;
  json j{{"schema", report::schema("bounds")},
         {"beta", report::vec(rep.beta.beta)},
         {"vol", report::str(rep.volume)},
         {"rank", report::str(*rep.rank)},
         {"simple_face", report::indices(rep.simple_face->indices)},
         {"bounds", report::bounds_json(b)}};
  std::ostringstream t;
  line(t, "rank", rep.rank->str());
  auto show = [&](std::string_view name, const BoundCheck &c) {
    if (!c.applicable) return line(t, name, "n/a");
    line(t, name, to_string(c.value) + (c.strict ? " < " : " <= ") + to_string(c.bound) +
                      (c.holds() ? " ok" : " VIOLATED"));
  };
  show("codim bound", b.codim_bound);
  show("sharper bound", b.sharper_bound);
  show("ratio bound", b.ratio_bound);
  return {std::move(j), t.str()};
}

inline auto parse_spec_ranges(const Request &r) {
  const auto [d0, d1] = report::parse_range(r.d_range);
  const auto [b0, b1] = report::parse_range(r.b_range);
  if (d0 > d1 || b0 > b1) throw error(errc::invalid_spec, "empty range");
  return std::tuple{d0, d1, b0, b1};
}

inline auto cmd_family_verify(const Request &r) -> Output {
  const auto [d0, d1, b0, b1] = parse_spec_ranges(r);
  json cells = json::array();
  std::ostringstream t;
  bool all = true;
  for (auto d = d0; d <= d1; ++d)
    for (auto b = b0; b <= b1; ++b) {
      if (d < 0) throw error(errc::invalid_spec, "family needs d >= 3");
      const auto rep = verify({static_cast<std::size_t>(d), Int(b)}, r.samples, r.scan_lines);
      all = all && rep.all_match;
      cells.push_back(report::family_json(rep));
      t << "d=" << d << " b=" << b << " vol " << rep.computed_vol << " max_rank "
        << rep.computed_max_rank << " ratio " << to_string(rep.ratio)
        << (rep.all_match ? " match" : " MISMATCH") << '\n';
    }
  return {json{{"schema", report::schema("family-verify")}, {"cells", cells}, {"all_match", all}},
          t.str()};
}

struct SweepRow {
  long long d, b;
  Int vol, max_rank;
  Rat ratio;
};

inline auto sweep(const Request &r) -> std::vector<SweepRow> {
  const auto [d0, d1, b0, b1] = parse_spec_ranges(r);
  if (d0 < 3) throw error(errc::invalid_spec, "family needs d >= 3");
  std::vector<std::future<SweepRow>> jobs;
  for (auto d = d0; d <= d1; ++d)
    for (auto b = b0; b <= b1; ++b)
      jobs.push_back(std::async(std::launch::async, [d, b] {
        const auto rep = verify({static_cast<std::size_t>(d), Int(b)}, 0, false);
        return SweepRow{d, b, rep.computed_vol, rep.computed_max_rank, rep.ratio};
      }));
  std::vector<SweepRow> rows;
  for (auto &j : jobs) rows.push_back(j.get());
  return rows;
}

inline auto sweep_csv(const std::vector<SweepRow> &rows) -> std::string {
  std::ostringstream s;
  s << "d,b,vol,max_rank,ratio\n";
  for (const auto &r : rows)
    s << r.d << ',' << r.b << ',' << r.vol << ',' << r.max_rank << ',' << to_string(r.ratio) << '\n';
  return s.str();
}

inline void write_out(const Request &r, const std::string &payload, std::ostream &out) {
  if (r.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(r.out_path);
  if (!f) throw std::runtime_error("cannot write '" + r.out_path + "'");
  f << payload;
  if (!f) throw std::runtime_error("write failed for '" + r.out_path + "'");
}

inline auto render(const Request &r, const Output &o) -> std::string {
  return r.format == Format::json ? o.j.dump(2) + "\n" : o.text;
}

} // namespace detail

inline auto execute(const Request &r, std::ostream &out, std::ostream &err) -> int {
  using namespace detail;
  auto fail = [&](const json &j, int status) {
    err << j.dump() << '\n';
    return status;
  };
  try {
    if (r.command == "family-sweep") {
      write_out(r, sweep_csv(sweep(r)), out);
      return 0;
    }
    if (r.command == "family-verify") {
      const auto o = cmd_family_verify(r);
      write_out(r, render(r, o), out);
      return 0;
    }
    const auto a = load_configuration(r);
    Output o;
    if (r.command == "info") o = cmd_info(a);
    else if (r.command == "volume") o = cmd_volume(r, a);
    else if (r.command == "faces") o = cmd_faces(a);
    else if (r.command == "normality") o = cmd_normality(a);
    else if (r.command == "holes") o = cmd_holes(r, a);
    else if (r.command == "rank") o = cmd_rank(r, a);
    else if (r.command == "bounds") o = cmd_bounds(r, a);
    else throw error(errc::invalid_spec, "unknown command '" + r.command + "'");
    write_out(r, render(r, o), out);
    return 0;
  } catch (const not_simple_error &e) {
    // the pair dump still goes to the report stream
    Output o{report::rank_json(e.report()), rank_text(e.report())};
    try {
      write_out(r, render(r, o), out);
    } catch (const std::exception &) {
    }
    return fail(report::error_json(e), 2);
  } catch (const error &e) {
    return fail(report::error_json(e), 2);
  } catch (const std::exception &e) {
    return fail(json{{"schema", report::schema("error")}, {"error", "InternalError"}, {"message", e.what()}},
                1);
  }
}

inline auto run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) -> int {
  CLI::App app{"gkzrank: combinatorial invariants of A-hypergeometric systems", "gkzrank"};
  const std::map<std::string, std::string> about{
      {"info", "dimensions, facets and volume of A"},
      {"volume", "normalized volume of A or of a face"},
      {"faces", "face lattice with volumes and lower bounds"},
      {"normality", "Hilbert basis and normality of NA"},
      {"holes", "lattice points of the cone missing NA in a box"},
      {"rank", "ranking pairs, simplicity and rank at beta"},
      {"bounds", "rank/volume bounds at a simple beta"},
      {"family-verify", "check A_{d,b} against its closed forms"},
      {"family-sweep", "CSV of vol, max rank and ratio over a (d,b) grid"}};
  app.require_subcommand(1);
  Request r;
  r.format = default_format();
  std::string format;

  auto add_common = [&](CLI::App *sc, bool matrix) {
    if (matrix) {
      sc->add_option("--matrix,-m", r.matrix_path, "JSON file {\"columns\": [[...], ...]}");
      sc->add_option("--columns,-c", r.columns, "inline columns, e.g. 1,0;1,1;0,2;0,3");
    }
    sc->add_option("--format,-f", format, "json or text (default: $GKZRANK_FORMAT or json)")
        ->check(CLI::IsMember({"json", "text"}));
    sc->add_option("--out,-o", r.out_path, "write the report to a file");
  };
  auto opt_string = [](CLI::App *sc, const char *name, std::optional<std::string> &dst,
                       const char *help) {
    sc->add_option_function<std::string>(name, [&dst](const std::string &s) { dst = s; }, help);
  };

  for (const auto *name : {"info", "volume", "faces", "normality", "holes", "rank", "bounds"}) {
    auto *sc = app.add_subcommand(name, about.at(name));
    add_common(sc, true);
    sc->callback([&r, name] { r.command = name; });
    const std::string n = name;
    if (n == "rank" || n == "bounds") opt_string(sc, "--beta,-b", r.beta, "rational vector, e.g. 0,1/2,-3");
    if (n == "holes") opt_string(sc, "--box", r.box, "lo..hi per coordinate (or one range for all)");
    if (n == "volume") opt_string(sc, "--face", r.face, "1-based column indices of a face");
  }
  for (const auto *name : {"family-verify", "family-sweep"}) {
    auto *sc = app.add_subcommand(name, about.at(name));
    add_common(sc, false);
    sc->callback([&r, name] { r.command = name; });
    sc->add_option("--d", r.d_range, "d or d0..d1");
    sc->add_option("--b", r.b_range, "b or b0..b1");
    if (std::string_view(name) == "family-verify") {
      sc->add_option("--samples", r.samples, "off-line parameters per cell");
      sc->add_flag("!--no-lines", r.scan_lines, "skip the exceptional line scan");
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    err << json{{"schema", report::schema("error")}, {"error", "UsageError"}, {"message", e.what()}}.dump()
        << '\n';
    return 2;
  }
  if (format == "json") r.format = Format::json;
  if (format == "text") r.format = Format::text;
  return execute(r, out, err);
}

} // namespace gkz::cli
