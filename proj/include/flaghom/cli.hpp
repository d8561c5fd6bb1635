#pragma once

// Job execution and report rendering for the flaghom command-line tool.
//
// Every command builds one JSON report; the text and TSV renderings are
// produced from that report, so all three formats carry the same values in
// the same order.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "flaghom/coeffs.hpp"
#include "flaghom/error.hpp"
#include "flaghom/homology.hpp"
#include "flaghom/rootsys.hpp"
#include "flaghom/weyl.hpp"

namespace flaghom::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class Command { Roots, Weyl, Coeffs, Homology, Orientability, Sweep };
enum class Format { Text, Json, Tsv };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"roots", Command::Roots},       {"weyl", Command::Weyl},
      {"coeffs", Command::Coeffs},     {"homology", Command::Homology},
      {"orientability", Command::Orientability}, {"sweep", Command::Sweep}};
  return names;
}

inline Command parse_command(const std::string& s) {
  for (const auto& [name, c] : command_names())
    if (name == s) return c;
  throw InvalidArgument("unknown command '" + s + "'");
}

inline std::string to_string(Command c) {
  for (const auto& [name, cc] : command_names())
    if (cc == c) return name;
  return "?";
}

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "tsv") return Format::Tsv;
  throw InvalidArgument("unknown format '" + s + "'");
}

inline Ring parse_ring(const std::string& s) {
  if (s == "z" || s == "Z") return Ring::Integer;
  if (s == "z2" || s == "Z2" || s == "Z/2") return Ring::Mod2;
  throw InvalidArgument("unknown ring '" + s + "'");
}

struct JobSpec {
  Command command = Command::Homology;
  Family family = Family::A;
  int rank = 1;
  std::vector<int> theta;  // included simple roots
  int max_degree = 3;
  Ring ring = Ring::Integer;
  Format format = Format::Text;
  std::uint64_t seed = 1;
};

struct Outcome {
  int exit_code = 0;
  Json report;          // empty on usage errors
  std::string output;   // rendered report
  std::string error;    // diagnostic for stderr
};

namespace detail {

inline Json json_of(const Root& r) { return Json(r.coeffs()); }

inline Json json_of(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

inline Json json_of(const HomologyGroup& h) {
  Json t = Json::array();
  for (const auto& d : h.torsion) t.push_back(json_of(d));
  return Json{{"degree", h.degree}, {"free_rank", h.free_rank}, {"torsion", t}, {"group", h.to_string()}};
}

inline Json json_of(const WeylElement& w) {
  Json j{{"word", w.word()}};
  if (w.one_line()) j["one_line"] = *w.one_line();
  j["length"] = w.length();
  return j;
}

inline std::string label_of(const WeylElement& w) {
  std::string s = w.word_string();
  if (w.one_line()) {
    s += " [";
    for (std::size_t k = 0; k < w.one_line()->size(); ++k) s += (k ? " " : "") + std::to_string((*w.one_line())[k]);
    s += "]";
  }
  return s;
}

inline Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json json_of(const KappaReport& r) {
  Json j;
  j["w"] = r.pair.w.word();
  j["w_prime"] = r.pair.w_prime.word();
  j["I"] = r.pair.deleted_index;
  j["beta"] = json_of(r.pair.beta);
  j["gamma"] = json_of(r.pair.gamma);
  j["kappa"] = r.coefficient.kappa;
  j["kappa_routes"] = Json{{"height", optional_json(r.kappa_height)},
                           {"sigma", r.kappa_sigma},
                           {"phi", r.kappa_phi},
                           {"type_a", optional_json(r.kappa_typeA)},
                           {"dual", optional_json(r.kappa_dual)}};
  j["magnitude"] = r.coefficient.magnitude;
  j["sign"] = to_string(r.coefficient.sign);
  j["sign_source"] = to_string(r.coefficient.source);
  return j;
}

class Checks {
 public:
  void add(const std::string& name, bool passed, const std::string& detail = "") {
    Json j{{"name", name}, {"passed", passed}};
    if (!detail.empty()) j["detail"] = detail;
    list_.push_back(std::move(j));
    if (!passed && first_failure_.empty()) first_failure_ = name + (detail.empty() ? "" : ": " + detail);
  }
  const Json& list() const { return list_; }
  bool ok() const { return first_failure_.empty(); }
  const std::string& first_failure() const { return first_failure_; }

 private:
  Json list_ = Json::array();
  std::string first_failure_;
};

inline Json job_json(const JobSpec& job, const ThetaSubset& theta) {
  return Json{{"command", to_string(job.command)},
              {"family", std::string(1, family_letter(job.family))},
              {"rank", job.rank},
              {"theta", theta.included()},
              {"theta_complement", theta.complement()},
              {"max_degree", job.max_degree},
              {"ring", job.ring == Ring::Integer ? "z" : "z2"},
              {"seed", job.seed}};
}

inline Json cells_json(const ChainComplex& cx) {
  Json out = Json::array();
  for (const auto& level : cx.cells)
    for (const auto& w : level) out.push_back(json_of(w));
  return out;
}

inline Json matrices_json(const ChainComplex& cx) {
  Json m = Json::object();
  for (int k = 1; k <= cx.max_degree; ++k) m[std::to_string(k)] = cx.boundaries[k].to_rows();
  return m;
}

inline Json matrix_labels_json(const ChainComplex& cx) {
  Json m = Json::object();
  for (int k = 1; k <= cx.max_degree; ++k) {
    Json rows = Json::array(), cols = Json::array();
    for (const auto& w : cx.cells[k]) rows.push_back(label_of(w));
    for (const auto& w : cx.cells[k - 1]) cols.push_back(label_of(w));
    m[std::to_string(k)] = Json{{"rows", rows}, {"cols", cols}};
  }
  return m;
}

inline int homology_limit(const ChainComplex& cx) {
  return cx.max_degree >= cx.top_dimension ? cx.top_dimension : cx.max_degree - 1;
}

inline bool contains_root(const std::vector<Root>& roots, const Root& r) {
  return std::find(roots.begin(), roots.end(), r) != roots.end();
}

// ---------------------------------------------------------------------------
// Commands. Each fills `report` and records its internal checks.

inline void run_roots(const JobSpec& job, const RootSystem& sys, Json& report, Checks& checks) {
  report["cartan"] = sys.cartan().matrix();
  report["symmetrizer"] = sys.cartan().symmetrizer();
  Json roots = Json::array();
  for (const Root& a : sys.positive_roots()) {
    const Root c = sys.coroot(a);
    roots.push_back(Json{{"root", json_of(a)},
                         {"height", a.height()},
                         {"coroot", json_of(c)},
                         {"coroot_height", c.height()},
                         {"norm_squared", sys.norm2(a)}});
  }
  report["roots"] = roots;

  const auto& pos = sys.positive_roots();
  checks.add("positive_root_count", pos.size() == classical_positive_root_count(sys.family(), sys.rank()));

  bool closed = true;
  for (const Root& a : pos)
    for (int i = 1; i <= sys.rank(); ++i) {
      const Root b = sys.reflect(i, a);
      if (!(b.is_positive() ? sys.contains(b) : sys.contains(-b))) closed = false;
    }
  checks.add("reflection_closure", closed);

  const RootSystem dual = sys.dual();
  bool involution = true;
  for (const Root& a : pos)
    if (dual.coroot(sys.coroot(a)) != a) involution = false;
  checks.add("coroot_involution", involution);

  bool dual_table = true;
  for (const Root& a : pos)
    if (!dual.contains(sys.coroot(a))) dual_table = false;
  checks.add("coroots_form_dual_system", dual_table);

  // Random sequences: alternating P-sum formula against folded reflections.
  std::mt19937_64 rng(job.seed);
  std::uniform_int_distribution<int> label(1, sys.rank()), len(1, 8);
  bool conj = true;
  std::string bad;
  for (int trial = 0; trial < 64 && conj; ++trial) {
    std::vector<int> seq(len(rng));
    for (int& s : seq) s = label(rng);
    Root folded = sys.simple_root(seq.back());
    for (std::size_t k = seq.size() - 1; k-- > 0;) folded = sys.reflect(seq[k], folded);
    if (conjugated_root(sys, seq) != folded) {
      conj = false;
      std::ostringstream os;
      for (int s : seq) os << s << ' ';
      bad = "sequence " + os.str();
    }
  }
  checks.add("conjugated_root_random", conj, bad);
}

inline void run_weyl(const JobSpec& job, const RootSystem& sys, const ThetaSubset& theta, Json& report,
                     Checks& checks) {
  const auto reps = minimal_representatives(sys, theta, job.max_degree);
  Json cells = Json::array();
  std::vector<long long> counts(job.max_degree + 1, 0);
  bool lengths = true, one_line = true, codes = true;
  for (const auto& w : reps) {
    cells.push_back(json_of(w));
    ++counts[w.length()];
    if (static_cast<int>(inversion_set(sys, w).size()) != w.length() || !is_reduced(sys, w.word())) lengths = false;
    if (sys.family() == Family::A) {
      if (!w.one_line_matches_action()) one_line = false;
      const auto spec = code_spectrum(*w.one_line());
      if (static_cast<int>(spec.size()) != w.length() || from_code_spectrum(sys, spec) != w) codes = false;
    }
  }
  report["cells"] = cells;
  report["cells_per_degree"] = counts;
  checks.add("inversion_set_size_is_length", lengths);
  if (sys.family() == Family::A) {
    checks.add("one_line_matches_action", one_line);
    checks.add("code_spectrum_round_trip", codes);
  }
}

inline void run_coeffs(const JobSpec& job, const RootSystem& sys, const ThetaSubset& theta, Json& report,
                       Checks& checks) {
  // Over Z/2 no sign is needed, so every pair in range can be listed.
  const ChainComplex cx = build_complex(sys, theta, job.max_degree, Ring::Mod2);
  report["cells"] = cells_json(cx);
  Json pairs = Json::array();
  for (const auto& p : cx.pairs) pairs.push_back(json_of(p));
  report["covering_pairs"] = pairs;
  checks.add("kappa_routes_agree", true);
  checks.add("boundary_squared_zero", true);
}

inline void run_homology(const JobSpec& job, const RootSystem& sys, const ThetaSubset& theta, Json& report,
                         Checks& checks) {
  const ChainComplex cx = build_complex(sys, theta, job.max_degree, job.ring);
  checks.add("boundary_squared_zero", true);
  report["cells"] = cells_json(cx);
  Json pairs = Json::array();
  for (const auto& p : cx.pairs) pairs.push_back(json_of(p));
  report["covering_pairs"] = pairs;
  report["matrices"] = matrices_json(cx);
  report["matrix_labels"] = matrix_labels_json(cx);
  Json reoriented = Json::array();
  for (const auto& [k, row] : cx.reoriented) reoriented.push_back(label_of(cx.cells[k][row]));
  report["reoriented_cells"] = reoriented;

  const int limit = homology_limit(cx);
  if (limit < 0) throw InvalidArgument("max degree too small to determine any homology group");
  const auto groups = homology_groups(cx, limit);
  Json hs = Json::array();
  for (const auto& h : groups) hs.push_back(json_of(h));
  report["homology"] = hs;

  if (job.ring == Ring::Mod2) {
    bool zero = true;
    for (int k = 1; k <= cx.max_degree; ++k) zero = zero && cx.boundaries[k].is_zero();
    checks.add("mod2_boundaries_zero", zero);
    const auto poly = poincare_mod2(sys, theta);
    bool match = true;
    for (const auto& h : groups) {
      const long long expect = h.degree < static_cast<int>(poly.size()) ? poly[h.degree] : 0;
      if (static_cast<long long>(h.free_rank) != expect) match = false;
    }
    checks.add("mod2_betti_equal_cell_counts", match);
    return;
  }

  const ChainComplex cx2 = build_complex(sys, theta, job.max_degree, Ring::Mod2, SignPolicy::PaperRules, false);
  checks.add("universal_coefficients", universal_coefficients_consistent(groups, homology_groups(cx2, limit)));

  const int n = sys.rank() + 1;
  if (sys.family() == Family::A && n >= 3 && limit >= 1) {
    const auto closed = h1_h2_closed_form(n, theta);
    Json cf{{"h1", json_of(closed.h1)}};
    checks.add("closed_form_h1", groups[1] == closed.h1, groups[1].to_string() + " vs " + closed.h1.to_string());
    if (closed.h2 && limit >= 2) {
      cf["h2"] = json_of(*closed.h2);
      checks.add("closed_form_h2", groups[2] == *closed.h2,
                 groups[2].to_string() + " vs " + closed.h2->to_string());
    }
    report["closed_form"] = cf;
  }
}

inline Json orientable_json(const RootSystem& sys, const ThetaSubset& theta, Checks& checks) {
  const bool top = orientable_via_topcell(sys, theta);
  Json o;
  if (sys.family() == Family::A) {
    const bool crit = orientable_typeA(sys.rank() + 1, theta);
    o["criterion"] = crit;
    o["top_cell"] = top;
    o["agree"] = crit == top;
    checks.add("orientability_agree", crit == top);
  } else {
    o["criterion"] = nullptr;
    o["top_cell"] = top;
    o["agree"] = nullptr;
  }
  return o;
}

inline void run_orientability(const RootSystem& sys, const ThetaSubset& theta, Json& report, Checks& checks) {
  const TopCellReport top = top_cell_report(sys, theta);
  report["cells"] = Json::array({json_of(top.top)});
  std::optional<DualHeightRoute> dual;
  if (DualHeightRoute::applicable(sys.family())) dual.emplace(sys);
  Json pairs = Json::array();
  for (const auto& [pair, kappa] : top.covers) pairs.push_back(json_of(analyze_pair(sys, pair, dual ? &*dual : nullptr)));
  report["covering_pairs"] = pairs;
  report["orientable"] = orientable_json(sys, theta, checks);
}

inline void run_sweep(const JobSpec& job, const RootSystem& sys, Json& report, Checks& checks) {
  if (sys.rank() > 16) throw Unsupported("too many subsets to sweep");
  const int n = sys.rank() + 1;
  const bool typeA = sys.family() == Family::A;
  Json rows = Json::array();
  for (unsigned mask = 0; mask < (1u << sys.rank()); ++mask) {
    const ThetaSubset theta = ThetaSubset::from_mask(sys.rank(), mask);
    Json row{{"theta", theta.included()}, {"theta_complement", theta.complement()}};
    std::vector<HomologyGroup> groups;
    const std::string tag = "theta=" + Json(theta.included()).dump();
    try {
      const ChainComplex cx = build_complex(sys, theta, job.max_degree, job.ring);
      const bool complete = cx.max_degree >= cx.top_dimension;
      const int limit = complete ? 2 : std::min(homology_limit(cx), 2);
      if (limit >= 0) groups = homology_groups(cx, limit);
    } catch (const Unsupported& e) {
      row["note"] = e.what();
    }
    Json hs = Json::array();
    for (std::size_t k = 1; k < groups.size(); ++k) hs.push_back(json_of(groups[k]));
    row["homology"] = hs;
    if (typeA && job.ring == Ring::Integer && n >= 3) {
      const auto closed = h1_h2_closed_form(n, theta);
      if (groups.size() > 1) checks.add("closed_form_h1 " + tag, groups[1] == closed.h1);
      if (closed.h2 && groups.size() > 2) checks.add("closed_form_h2 " + tag, groups[2] == *closed.h2);
    }
    Checks local;
    row["orientable"] = orientable_json(sys, theta, local);
    if (!local.ok()) checks.add("orientability_agree " + tag, false);
    rows.push_back(std::move(row));
  }
  report["sweep"] = rows;
  if (checks.ok()) checks.add("sweep_consistent", true);
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

// Columns in first-seen key order across all rows.
inline std::vector<std::string> table_columns(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

inline bool is_table(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

inline void render_table(std::ostream& os, const Json& rows, bool tsv) {
  const auto cols = table_columns(rows);
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& c : cols) line.push_back(row.contains(c) ? scalar_text(row[c]) : "-");
    cells.push_back(std::move(line));
  }
  if (tsv) {
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "\t" : "") << cols[c];
    os << '\n';
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < line.size(); ++c) os << (c ? "\t" : "") << line[c];
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) s += "  ";
      s += line[c];
      if (c + 1 < line.size()) s.append(width[c] - line[c].size(), ' ');
    }
    os << s << '\n';
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

inline void render_matrix(std::ostream& os, const Json& m, bool tsv) {
  std::size_t width = 1;
  for (const auto& row : m)
    for (const auto& v : row) width = std::max(width, v.dump().size());
  for (const auto& row : m) {
    std::string s;
    bool first = true;
    for (const auto& v : row) {
      const std::string t = v.dump();
      if (!first) s += tsv ? "\t" : " ";
      if (!tsv) s.append(width - t.size(), ' ');
      s += t;
      first = false;
    }
    os << s << '\n';
  }
}

inline void render_section(std::ostream& os, const std::string& key, const Json& v, bool tsv) {
  os << (tsv ? "# " : "== ") << key << (tsv ? "" : " ==") << '\n';
  if (is_table(v)) {
    render_table(os, v, tsv);
  } else if (key == "matrices") {
    for (const auto& [k, m] : v.items()) {
      os << (tsv ? "## d" : "d") << k << (tsv ? "" : ":") << '\n';
      render_matrix(os, m, tsv);
    }
  } else if (v.is_object()) {
    for (const auto& [k, e] : v.items()) os << k << (tsv ? "\t" : ": ") << scalar_text(e) << '\n';
  } else if (v.is_array() && !v.empty() && v[0].is_array()) {
    render_matrix(os, v, tsv);
  } else {
    os << scalar_text(v) << '\n';
  }
}

}  // namespace detail

inline std::string render(const Json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  const bool tsv = format == Format::Tsv;
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, v] : report.items()) {
    if (!first && !tsv) os << '\n';
    first = false;
    if (v.is_string() || v.is_number() || v.is_boolean() || v.is_null()) {
      os << key << (tsv ? "\t" : ": ") << detail::scalar_text(v) << '\n';
      continue;
    }
    detail::render_section(os, key, v, tsv);
  }
  return os.str();
}

// Runs the job. Usage problems give exit code 2 and no report; failed
// internal checks give exit code 1 with the report describing the failure.
inline Outcome run(const JobSpec& job) {
  Outcome out;
  try {
    if (job.max_degree < 0) throw InvalidArgument("max degree must be >= 0");
    const RootSystem sys = RootSystem::standard(job.family, job.rank);
    const ThetaSubset theta(job.rank, job.theta);

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["job"] = detail::job_json(job, theta);
    detail::Checks checks;
    try {
      switch (job.command) {
        case Command::Roots: detail::run_roots(job, sys, report, checks); break;
        case Command::Weyl: detail::run_weyl(job, sys, theta, report, checks); break;
        case Command::Coeffs: detail::run_coeffs(job, sys, theta, report, checks); break;
        case Command::Homology: detail::run_homology(job, sys, theta, report, checks); break;
        case Command::Orientability: detail::run_orientability(sys, theta, report, checks); break;
        case Command::Sweep: detail::run_sweep(job, sys, report, checks); break;
      }
    } catch (const CheckFailure& e) {
      checks.add("internal", false, e.what());
    }
    report["checks"] = checks.list();
    report["status"] = checks.ok() ? "ok" : "check-failure";
    if (!checks.ok()) {
      report["failure"] = checks.first_failure();
      out.exit_code = 1;
      out.error = "check failed: " + checks.first_failure();
    }
    out.output = render(report, job.format);
    out.report = std::move(report);
  } catch (const CheckFailure& e) {
    out = Outcome{};
    out.exit_code = 1;
    out.error = std::string("check failed: ") + e.what();
  } catch (const Error& e) {
    out = Outcome{};
    out.exit_code = 2;
    out.error = std::string("error: ") + e.what();
  }
  return out;
}

}  // namespace flaghom::cli
