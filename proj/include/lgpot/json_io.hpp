#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lgpot/periods.hpp"
#include "lgpot/series.hpp"
#include "lgpot/theta.hpp"
#include "lgpot/toric.hpp"

namespace lgpot {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw error(what + ": missing field '" + key + "'");
  return *it;
}

inline std::vector<int> int_vector(const Json& j, const std::string& what) {
  if (!j.is_array()) throw error(what + ": expected an array of integers");
  std::vector<int> v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw error(what + ": expected an array of integers");
    v.push_back(e.get<int>());
  }
  return v;
}

inline Rational term_rational(const Json& j, const std::string& what) {
  std::string num = field(j, "num", what).get<std::string>();
  std::string den = field(j, "den", what).get<std::string>();
  BigInt d = bigint_from_string(den);
  if (d <= 0) throw error(what + ": denominator must be positive");
  return Rational(bigint_from_string(num), d);
}

inline Json rational_fields(const Rational& q) {
  Json j;
  j["num"] = numerator(q).str();
  j["den"] = denominator(q).str();
  return j;
}

}  // namespace detail

// ---- Series ----------------------------------------------------------------
// { "vars": [names], "weights": [ints], "cap": int, "terms": [ { "exp", "num",
// "den" } ] }, terms in lexicographic exponent order. A "zero_caps" field is
// added exactly when a weight-zero variable is present.

inline Json series_to_json(const Series& s) {
  const SeriesContext& ctx = s.context();
  Json j;
  j["vars"] = ctx.vars;
  j["weights"] = ctx.weights;
  j["cap"] = ctx.cap;
  if (ctx.has_zero_weight()) j["zero_caps"] = ctx.zero_caps;
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {  // std::map iterates lexicographically
    Json t;
    t["exp"] = m;
    t.update(detail::rational_fields(c));
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline Series series_from_json(const Json& j) {
  const std::string what = "series";
  std::vector<std::string> vars = detail::field(j, "vars", what).get<std::vector<std::string>>();
  std::vector<int> weights = detail::int_vector(detail::field(j, "weights", what), what);
  int cap = detail::field(j, "cap", what).get<int>();
  std::vector<int> zero_caps;
  if (j.contains("zero_caps")) zero_caps = detail::int_vector(j["zero_caps"], what);
  Series s(SeriesContext(std::move(vars), std::move(weights), cap, std::move(zero_caps)));
  for (const auto& t : detail::field(j, "terms", what)) {
    std::vector<int> exp = detail::int_vector(detail::field(t, "exp", what), what);
    Monomial m(exp.begin(), exp.end());
    if (s.coeff(m) != 0) throw error(what + ": duplicate term");
    if (!s.context().admissible(m)) throw error(what + ": term beyond the truncation order");
    s.add_term(m, detail::term_rational(t, what));
  }
  return s;
}

// ---- Toric geometry ---------------------------------------------------------
// { "name", "picard_rank", "divisors": [ { "name", "pairings", "class" } ],
//   "mori_generators": [[ints]], "anticanonical": [ints] }

inline Json geometry_to_json(const ToricGeometry& g) {
  Json j;
  j["name"] = g.name;
  j["picard_rank"] = g.picard_rank;
  Json divisors = Json::array();
  for (int i = 0; i < g.ndivisors(); ++i) {
    Json d;
    d["name"] = g.divisor_names[i];
    d["pairings"] = g.pairing_matrix[i];
    d["class"] = g.divisor_classes[i];
    divisors.push_back(std::move(d));
  }
  j["divisors"] = std::move(divisors);
  j["mori_generators"] = g.mori_generators;
  j["anticanonical"] = g.anticanonical;
  return j;
}

inline ToricGeometry geometry_from_json(const Json& j) {
  const std::string what = "geometry";
  ToricGeometry g;
  g.name = detail::field(j, "name", what).get<std::string>();
  g.picard_rank = detail::field(j, "picard_rank", what).get<int>();
  for (const auto& d : detail::field(j, "divisors", what)) {
    g.divisor_names.push_back(detail::field(d, "name", what).get<std::string>());
    g.pairing_matrix.push_back(detail::int_vector(detail::field(d, "pairings", what), what));
    g.divisor_classes.push_back(detail::int_vector(detail::field(d, "class", what), what));
  }
  for (const auto& m : detail::field(j, "mori_generators", what))
    g.mori_generators.push_back(detail::int_vector(m, what));
  g.anticanonical = detail::int_vector(detail::field(j, "anticanonical", what), what);
  g.validate();
  return g;
}

// ---- Invariant table --------------------------------------------------------
// { "dgrades_modulus": int, "entries": [ { "n", "p", "num", "den" } ] },
// entries sorted by (p, n).

inline Json table_to_json(const InvariantTable& t) {
  Json j;
  j["dgrades_modulus"] = t.dgrades_modulus;
  if (t.complete_through > 0) j["complete_through"] = t.complete_through;
  std::vector<std::pair<int, int>> keys;  // (p, n)
  keys.reserve(t.entries.size());
  for (const auto& [key, v] : t.entries) keys.push_back({key.second, key.first});
  std::sort(keys.begin(), keys.end());
  Json entries = Json::array();
  for (const auto& [p, n] : keys) {
    Json e;
    e["n"] = n;
    e["p"] = p;
    e.update(detail::rational_fields(t.get(n, p)));
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline InvariantTable table_from_json(const Json& j) {
  const std::string what = "invariant table";
  InvariantTable t;
  t.dgrades_modulus = detail::field(j, "dgrades_modulus", what).get<int>();
  if (t.dgrades_modulus < 1) throw error(what + ": dgrades_modulus must be positive");
  if (j.contains("complete_through")) t.complete_through = j["complete_through"].get<int>();
  for (const auto& e : detail::field(j, "entries", what)) {
    int n = detail::field(e, "n", what).get<int>();
    int p = detail::field(e, "p", what).get<int>();
    if (t.has(n, p)) throw error(what + ": duplicate entry");
    t.set(n, p, detail::term_rational(e, what));
  }
  return t;
}

// ---- Verification report ----------------------------------------------------
// { "pass": bool, "mismatches": [ { "xpow", "tpow", "lhs", "rhs" } ] }

inline Json report_to_json(const VerifyReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json ms = Json::array();
  for (const Mismatch& m : r.mismatches) {
    Json e;
    e["xpow"] = m.xpow;
    e["tpow"] = m.tpow;
    e["lhs"] = to_string(m.lhs);
    e["rhs"] = to_string(m.rhs);
    ms.push_back(std::move(e));
  }
  j["mismatches"] = std::move(ms);
  return j;
}

// ---- Laurent polynomial -----------------------------------------------------
// { "nvars": int, "terms": [ { "exp": [ints], "num", "den" } ] }

inline Json laurent_to_json(const LaurentPolynomial& f) {
  Json j;
  j["nvars"] = f.nvars;
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms) {
    Json t;
    t["exp"] = e;
    t.update(detail::rational_fields(c));
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline LaurentPolynomial laurent_from_json(const Json& j) {
  const std::string what = "laurent polynomial";
  LaurentPolynomial f;
  f.nvars = detail::field(j, "nvars", what).get<int>();
  if (f.nvars < 1) throw error(what + ": nvars must be positive");
  for (const auto& t : detail::field(j, "terms", what))
    f.add_term(detail::int_vector(detail::field(t, "exp", what), what),
               detail::term_rational(t, what));
  return f;
}

// ---- Period sequence ----------------------------------------------------------
// { "coeffs": ["1", "0", "6", ...] } with canonical rational strings.

inline Json period_to_json(const PeriodSequence& pi) {
  Json j;
  Json coeffs = Json::array();
  for (const Rational& c : pi.coeffs) coeffs.push_back(to_string(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

inline PeriodSequence period_from_json(const Json& j) {
  const std::string what = "period sequence";
  PeriodSequence pi;
  for (const auto& c : detail::field(j, "coeffs", what)) {
    if (!c.is_string()) throw error(what + ": coefficients must be rational strings");
    pi.coeffs.push_back(rational_from_string(c.get<std::string>()));
  }
  return pi;
}

// ---- File loading -------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw error("malformed JSON in '" + path + "': " + e.what());
  }
}

inline ToricGeometry load_geometry(const std::string& path) {
  try {
    return geometry_from_json(load_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw error("invalid geometry file '" + path + "': " + e.what());
  }
}

inline LaurentPolynomial load_laurent(const std::string& path) {
  try {
    return laurent_from_json(load_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw error("invalid laurent file '" + path + "': " + e.what());
  }
}

inline InvariantTable load_table(const std::string& path) {
  try {
    return table_from_json(load_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw error("invalid table file '" + path + "': " + e.what());
  }
}

}  // namespace lgpot
