#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitlab/abelian.hpp"
#include "orbitlab/avoiding.hpp"
#include "orbitlab/counting.hpp"
#include "orbitlab/equivalence.hpp"
#include "orbitlab/linear.hpp"
#include "orbitlab/min_height.hpp"

namespace orbitlab::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

inline json big(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline BigInt as_int(const json& j, const char* what) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(std::string("expected an integer for ") + what + ", got " + j.dump());
}

inline Rat as_rat(const json& j, const char* what) {
  if (j.is_array() && j.size() == 2) {
    const BigInt den = as_int(j[1], what);
    if (den == 0) throw ParseError(std::string("zero denominator in ") + what);
    return make_rat(as_int(j[0], what), den);
  }
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  return Rat(as_int(j, what));
}

inline json rat(const Rat& q) {
  if (q.get_den() == 1) return big(q.get_num());
  return q.get_str();
}

}  // namespace detail

/// Parses JSON text, turning syntax errors into ParseError with a position.
inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, col);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::PreconditionViolated, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Polynomials and morphisms
// ---------------------------------------------------------------------------

/// Terms [[num, den, [e0..eN]], ...] with rational coefficients.
inline std::vector<std::pair<Rat, Exponents>> parse_rational_terms(const json& j, std::size_t N, unsigned d) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of terms");
  std::vector<std::pair<Rat, Exponents>> out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_array())
      throw ParseError("term must be [num, den, [exponents]], got " + t.dump());
    const BigInt den = detail::as_int(t[1], "denominator");
    if (den == 0) throw ParseError("zero denominator in " + t.dump());
    Exponents e;
    unsigned sum = 0;
    for (const auto& x : t[2]) {
      if (!x.is_number_unsigned()) throw ParseError("exponents must be non-negative integers, got " + t[2].dump());
      e.push_back(x.get<unsigned>());
      sum += e.back();
    }
    if (e.size() != N + 1)
      throw ParseError("term has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(N + 1));
    if (sum != d)
      throw Error(ErrorKind::DegreeMismatch, "exponents " + t[2].dump() + " sum to " + std::to_string(sum) + ", expected " + std::to_string(d));
    out.emplace_back(make_rat(detail::as_int(t[0], "numerator"), den), std::move(e));
  }
  return out;
}

inline json to_json(const HomogPoly& p) {
  json a = json::array();
  for (const auto& t : p.terms()) a.push_back(json::array({detail::big(t.coeff), 1, t.exps}));
  return a;
}

inline MorphismPN parse_morphism(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("d") || !j.contains("polys"))
    throw ParseError("morphism needs fields N, d, polys");
  if (!j["N"].is_number_unsigned() || !j["d"].is_number_unsigned()) throw ParseError("N and d must be non-negative integers");
  const auto N = j["N"].get<std::size_t>();
  const auto d = j["d"].get<unsigned>();
  const auto& polys = j["polys"];
  if (!polys.is_array() || polys.size() != N + 1)
    throw ParseError("polys must hold N+1 = " + std::to_string(N + 1) + " polynomials");
  std::vector<std::vector<std::pair<Rat, Exponents>>> raw;
  BigInt den = 1;
  for (const auto& p : polys) {
    raw.push_back(parse_rational_terms(p, N, d));
    for (const auto& [c, e] : raw.back()) den = lcm(den, c.get_den());
  }
  std::vector<HomogPoly> out;
  for (const auto& r : raw) {
    std::vector<Term> terms;
    for (const auto& [c, e] : r) terms.push_back({c.get_num() * (den / c.get_den()), e});
    out.emplace_back(N, d, std::move(terms));
  }
  return MorphismPN(std::move(out));
}

inline MorphismPN parse_morphism_text(const std::string& text) { return parse_morphism(parse_json(text)); }
inline MorphismPN parse_morphism_file(const std::string& path) { return parse_morphism_text(read_file(path)); }

inline json to_json(const MorphismPN& f) {
  json polys = json::array();
  for (const auto& p : f.polys()) polys.push_back(to_json(p));
  return json{{"N", f.N()}, {"d", f.degree()}, {"polys", polys}};
}

inline HomogPoly parse_form(const json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("d") || !j.contains("terms"))
    throw ParseError("form needs fields N, d, terms");
  const auto N = j["N"].get<std::size_t>();
  const auto d = j["d"].get<unsigned>();
  auto raw = parse_rational_terms(j["terms"], N, d);
  BigInt den = 1;
  for (const auto& [c, e] : raw) den = lcm(den, c.get_den());
  std::vector<Term> terms;
  for (const auto& [c, e] : raw) terms.push_back({c.get_num() * (den / c.get_den()), e});
  return HomogPoly(N, d, std::move(terms));
}

/// {"M": int, "g": [[poly, ...], ...]}: row i states x_i^M = sum_j g_ij f_j.
/// Each row is scaled to integer coefficients; the scale becomes R_i.
inline NullstellensatzCertificate parse_certificate(const json& j, const MorphismPN& f) {
  if (!j.is_object() || !j.contains("M") || !j.contains("g")) throw ParseError("certificate needs fields M, g");
  NullstellensatzCertificate cert;
  cert.M = j["M"].get<unsigned>();
  if (cert.M < f.degree()) throw ParseError("certificate exponent M is below deg f");
  const auto& g = j["g"];
  if (!g.is_array() || g.size() != f.N() + 1) throw ParseError("g must have N+1 rows");
  for (const auto& row : g) {
    if (!row.is_array() || row.size() != f.N() + 1) throw ParseError("each g row must have N+1 forms");
    std::vector<std::vector<std::pair<Rat, Exponents>>> raw;
    BigInt den = 1;
    for (const auto& p : row) {
      raw.push_back(parse_rational_terms(p, f.N(), cert.M - f.degree()));
      for (const auto& [c, e] : raw.back()) den = lcm(den, c.get_den());
    }
    std::vector<HomogPoly> forms;
    for (const auto& r : raw) {
      std::vector<Term> terms;
      for (const auto& [c, e] : r) terms.push_back({c.get_num() * (den / c.get_den()), e});
      forms.emplace_back(f.N(), cert.M - f.degree(), std::move(terms));
    }
    cert.G.push_back(std::move(forms));
    cert.row_scale.push_back(den);
  }
  return cert;
}

inline NullstellensatzCertificate parse_certificate_file(const std::string& path, const MorphismPN& f) {
  return parse_certificate(parse_json(read_file(path)), f);
}

// ---------------------------------------------------------------------------
// Points, matrices, group points
// ---------------------------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// "2,1" or "[2,1]"; rational entries are cleared.
inline ProjPoint parse_point(const std::string& s) {
  std::vector<Rat> v;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) throw ParseError("empty coordinate in point \"" + s + "\"");
    v.push_back(parse_rat(part));
  }
  return normalize_point(v);
}

inline std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> v;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) throw ParseError("empty entry in list \"" + s + "\"");
    v.push_back(parse_rat(part));
  }
  return v;
}

inline std::vector<BigInt> parse_int_list(const std::string& s) {
  std::vector<BigInt> v;
  for (const auto& part : split(s, ',')) {
    if (part.empty()) throw ParseError("empty entry in list \"" + s + "\"");
    v.push_back(parse_int(part));
  }
  return v;
}

inline json to_json(const ProjPoint& P) {
  json a = json::array();
  for (const auto& c : P.coords()) a.push_back(detail::big(c));
  return a;
}

inline Matrix<Rat> parse_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a non-empty array of rows");
  Matrix<Rat> m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != m.cols()) throw ParseError("matrix rows differ in length");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = detail::as_rat(j[r][c], "matrix entry");
  }
  return m;
}

inline json to_json(const Matrix<Rat>& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json::array({detail::big(m(r, c).get_num()), detail::big(m(r, c).get_den())}));
    a.push_back(row);
  }
  return a;
}

/// [1, 0] or {"free": [1, 0], "torsion": 2, "t": 5}.
inline GroupPoint parse_group_point(const json& j) {
  if (j.is_array()) {
    std::vector<BigInt> f;
    for (const auto& x : j) f.push_back(detail::as_int(x, "group coordinate"));
    return GroupPoint(std::move(f));
  }
  if (j.is_object() && j.contains("free")) {
    std::vector<BigInt> f;
    for (const auto& x : j["free"]) f.push_back(detail::as_int(x, "group coordinate"));
    BigInt tors = j.contains("torsion") ? detail::as_int(j["torsion"], "torsion") : BigInt(0);
    BigInt t = j.contains("t") ? detail::as_int(j["t"], "t") : BigInt(1);
    return GroupPoint(std::move(f), tors, t);
  }
  throw ParseError("group point must be an integer array or an object with \"free\"");
}

/// Accepts JSON or a bare comma list.
inline GroupPoint parse_group_point(const std::string& s) {
  const auto first = s.find_first_not_of(' ');
  if (first != std::string::npos && (s[first] == '[' || s[first] == '{')) return parse_group_point(parse_json(s));
  return GroupPoint(parse_int_list(s));
}

inline json to_json(const GroupPoint& g) {
  json a = json::array();
  for (const auto& x : g.free) a.push_back(detail::big(x));
  if (g.t == 1) return a;
  return json{{"free", a}, {"torsion", detail::big(g.torsion)}, {"t", detail::big(g.t)}};
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const Interval& x) { return json{{"lo", x.lo().str(30, MPFR_RNDD)}, {"hi", x.hi().str(30, MPFR_RNDU)}, {"precision_bits", precision_bits()}}; }

inline json to_json(const HeightInterval& h) {
  json j = to_json(h.value);
  j["mode"] = to_string(h.mode);
  j["iterations"] = h.iterations_used;
  if (h.exact) j["exact"] = h.exact->str();
  return j;
}

inline json to_json(const ComparisonConstants& c) {
  json j{{"mode", to_string(c.mode)}, {"C_up", to_json(c.c_up)}, {"exp_C_up", detail::big(c.up_factor)}};
  if (c.c_low) j["C_low"] = to_json(*c.c_low);
  if (c.low_factor) j["exp_C_low"] = detail::rat(*c.low_factor);
  if (c.mode == ConstantsMode::Heuristic) j["heuristic_margin"] = detail::rat(c.heuristic_margin);
  return j;
}

inline json to_json(const EquivVerdict& v) {
  if (const auto* e = std::get_if<Equivalent>(&v)) return json{{"verdict", "Equivalent"}, {"i", e->i}, {"j", e->j}};
  if (const auto* n = std::get_if<NotEquivalent>(&v))
    return json{{"verdict", "NotEquivalent"}, {"certificate", to_string(n->certificate)}};
  return json{{"verdict", "Inconclusive"}, {"budget_used", std::get<InconclusiveVerdict>(v).budget_used}};
}

inline json to_json(const OrbitRecord& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(to_json(p));
  json j{{"points", pts}};
  if (const auto* p = std::get_if<Preperiodic>(&r.classification))
    j["classification"] = json{{"kind", "Preperiodic"}, {"tail", p->tail}, {"cycle", p->cycle}};
  else if (const auto* w = std::get_if<WanderingCertified>(&r.classification))
    j["classification"] = json{{"kind", "WanderingCertified"}, {"witness_step", w->witness_step}};
  else
    j["classification"] = json{{"kind", "Inconclusive"}, {"steps_used", std::get<Inconclusive>(r.classification).steps_used}};
  return j;
}

inline json to_json(const DensityCertificate& c) {
  json forms = json::array();
  for (const auto& k : c.kernel_basis) forms.push_back(to_json(k));
  return json{{"D", c.D},           {"points", c.n_points}, {"monomials", c.n_monomials},
              {"rank", c.rank},     {"dense", c.dense},     {"kernel_basis", forms}};
}

/// "lo..hi" with exact rationals; brackets only when a side is closed.
inline std::string gap_string(const RatInterval& g) { return g.lo.get_str() + ".." + g.hi.get_str(); }

inline json to_json(const RatInterval& g) {
  return json{{"lo", detail::rat(g.lo)}, {"hi", detail::rat(g.hi)}, {"lo_closed", g.lo_closed}, {"hi_closed", g.hi_closed},
              {"length", detail::rat(g.length())}};
}

inline json to_json(const GapReport& r) {
  json alphas = json::array(), covered = json::array(), gaps = json::array();
  for (const auto& a : r.alphas) alphas.push_back(detail::rat(a));
  for (const auto& c : r.covered) covered.push_back(to_json(c));
  for (const auto& g : r.gaps) gaps.push_back(to_json(g));
  json j{{"alphas", alphas}, {"beta", detail::rat(r.beta)}, {"d", detail::rat(r.d)}, {"T", detail::rat(r.T)},
         {"covered", covered}, {"gaps", gaps}};
  if (r.largest_gap) j["largest_gap"] = gap_string(*r.largest_gap);
  return j;
}

inline std::string points_tsv(const std::vector<ProjPoint>& pts) {
  std::string s;
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.coords().size(); ++i) s += (i ? "\t" : "") + p[i].get_str();
    s += "\n";
  }
  return s;
}

inline json repset_sidecar(const RepSet& r) {
  json merged = json::array(), inconc = json::array(), pairs = json::array();
  for (const auto& m : r.merged)
    merged.push_back(json{{"point", to_json(m.point)}, {"rep", m.rep}, {"i", m.witness.i}, {"j", m.witness.j}});
  for (const auto& p : r.inconclusive) inconc.push_back(to_json(p));
  for (const auto& c : r.pair_certificates) pairs.push_back(json{{"a", c.a}, {"b", c.b}, {"certificate", to_string(c.certificate)}});
  json reps = json::array();
  for (const auto& p : r.reps) reps.push_back(to_json(p));
  return json{{"enumeration_bound", r.enumeration_bound},
              {"certified", r.certified},
              {"representatives", reps},
              {"density", to_json(r.density)},
              {"merged", merged},
              {"inconclusive", inconc},
              {"pair_certificates", pairs}};
}

inline std::string valuation_tsv(const ValuationTable& t) {
  std::string s = "n";
  for (std::size_t i = 0; i < t.r.size(); ++i) s += "\tord_p(x" + std::to_string(i) + ")";
  s += "\tmatches\n";
  for (std::size_t n = 0; n < t.rows.size(); ++n) {
    s += std::to_string(n);
    bool ok = true;
    for (std::size_t i = 0; i < t.rows[n].size(); ++i) {
      const auto& v = t.rows[n][i];
      s += "\t" + (v ? std::to_string(*v) : std::string("inf"));
      ok = ok && v && *v == -t.r[i];
    }
    s += ok ? "\tyes\n" : "\tno\n";
  }
  return s;
}

inline std::string count_tsv(const CountReport& r) {
  std::string s = "T\tcount\tcount/" + r.normalization + "\n";
  for (std::size_t i = 0; i < r.T_grid.size(); ++i) {
    s += std::to_string(r.T_grid[i]) + "\t" + r.counts[i].get_str() + "\t";
    if (i < r.normalized.size()) s += r.normalized[i] ? r.normalized[i]->get_str() : "NA";
    else if (i < r.normalized_real.size()) s += r.normalized_real[i] ? r.normalized_real[i]->str(12) : "NA";
    s += "\n";
  }
  return s;
}

inline json to_json(const CountReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.T_grid.size(); ++i) {
    json row{{"T", r.T_grid[i]}, {"count", detail::big(r.counts[i])}};
    if (i < r.normalized.size()) row["normalized"] = r.normalized[i] ? detail::rat(*r.normalized[i]) : json(nullptr);
    if (i < r.normalized_real.size()) row["normalized"] = r.normalized_real[i] ? to_json(*r.normalized_real[i]) : json(nullptr);
    if (i < r.orbit_details.size()) {
      const auto& o = r.orbit_details[i];
      row["certified_wandering"] = o.certified_wandering;
      if (o.paper_bound) row["paper_bound"] = to_json(*o.paper_bound);
      row["bound_holds"] = o.bound_holds;
    }
    rows.push_back(row);
  }
  return json{{"normalization", r.normalization}, {"rows", rows}};
}

inline json to_json(const OrbitCount& c) {
  json j{{"count", detail::big(c.count)}, {"certified_wandering", c.certified_wandering}, {"bound_holds", c.bound_holds},
         {"truncated", c.truncated}, {"steps", c.steps}};
  if (c.paper_bound) j["bound"] = to_json(*c.paper_bound);
  return j;
}

inline json to_json(const MinHeightResult& r) {
  return json{{"value", to_json(r.value)}, {"witness", to_json(r.witness)}, {"search_bound", r.search_bound},
              {"examined", r.examined}, {"preperiodic", r.preperiodic}, {"inconclusive", r.inconclusive}};
}

inline json to_json(const AvoidingSet& a) {
  json as = json::array(), pts = json::array(), certs = json::array();
  for (const auto& x : a.a_values) as.push_back(detail::big(x));
  for (const auto& p : a.points) pts.push_back(to_json(p));
  for (const auto& c : a.disjointness) {
    json gaps = json::array();
    for (const auto& [x, g] : c.gaps) gaps.push_back(json{{"a", detail::big(x)}, {"gap", to_json(g)}});
    certs.push_back(json{{"orbit", c.label}, {"gaps", gaps}});
  }
  return json{{"a_values", as}, {"points", pts}, {"beta", detail::rat(a.beta)}, {"disjointness", certs},
              {"density", to_json(a.density)}};
}

inline json to_json(const ValuationTable& t) {
  json rows = json::array(), viol = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v ? json(*v) : json(nullptr));
    rows.push_back(r);
  }
  for (auto n : t.violations) viol.push_back(n);
  return json{{"p", detail::big(t.p)}, {"r", t.r}, {"rows", rows}, {"violations", viol}};
}

inline json to_json(const GapScanRow& r) {
  json j{{"T", detail::rat(r.T)}};
  j["largest_gap_length"] = r.largest_gap_length ? detail::rat(*r.largest_gap_length) : json(nullptr);
  j["normalized"] = r.normalized ? to_json(*r.normalized) : json(nullptr);
  if (!r.largest_gap_length) j["flag"] = "DegenerateCover";
  return j;
}

}  // namespace orbitlab::io
