#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lgpot/series.hpp"
#include "lgpot/theta.hpp"

namespace lgpot {

/// Toric pair (X, D) with D = -K_X nef, given by intersection data only:
/// divisor pairings against a curve basis dual to the nef basis p_1..p_r,
/// divisor classes in the nef basis, and Mori cone generators.
struct ToricGeometry {
  std::string name;
  int picard_rank = 0;
  std::vector<std::string> divisor_names;
  std::vector<std::vector<int>> pairing_matrix;    // row i: D_i . e_a
  std::vector<std::vector<int>> divisor_classes;   // row i: D_i in the nef basis
  std::vector<std::vector<int>> mori_generators;   // curve classes, e-basis coords
  std::vector<int> anticanonical;                  // D = sum m_a p_a

  int ndivisors() const { return static_cast<int>(pairing_matrix.size()); }

  int ddeg_of(const std::vector<int>& coords) const {
    int d = 0;
    for (int a = 0; a < picard_rank; ++a) d += anticanonical[a] * coords[a];
    return d;
  }

  bool has_zero_degree_generator() const {
    for (const auto& g : mori_generators)
      if (ddeg_of(g) == 0) return true;
    return false;
  }

  // Grades realizable as D.beta are the positive multiples of this gcd.
  int dgrades_modulus() const {
    int g = 0;
    for (const auto& gen : mori_generators) g = std::gcd(g, ddeg_of(gen));
    return g == 0 ? 1 : g;
  }

  void validate() const {
    int r = picard_rank, m = ndivisors();
    if (r < 1) throw error("geometry '" + name + "': picard_rank must be positive");
    if (m < 1) throw error("geometry '" + name + "': no divisors");
    if (static_cast<int>(divisor_names.size()) != m ||
        static_cast<int>(divisor_classes.size()) != m)
      throw error("geometry '" + name + "': divisor row count mismatch");
    if (static_cast<int>(anticanonical.size()) != r)
      throw error("geometry '" + name + "': anticanonical length mismatch");
    for (int a = 0; a < r; ++a)
      if (anticanonical[a] < 0)
        throw error("geometry '" + name + "': invariant 'anticanonical_nonnegative' violated");
    for (int i = 0; i < m; ++i)
      if (static_cast<int>(pairing_matrix[i].size()) != r ||
          static_cast<int>(divisor_classes[i].size()) != r)
        throw error("geometry '" + name + "': divisor row length mismatch");
    for (int a = 0; a < r; ++a) {
      int pair_sum = 0, class_sum = 0;
      for (int i = 0; i < m; ++i) {
        pair_sum += pairing_matrix[i][a];
        class_sum += divisor_classes[i][a];
      }
      if (pair_sum != anticanonical[a])
        throw error("geometry '" + name + "': invariant 'pairing_column_sum' violated");
      if (class_sum != anticanonical[a])
        throw error("geometry '" + name + "': invariant 'divisor_class_sum' violated");
    }
    if (mori_generators.empty())
      throw error("geometry '" + name + "': no Mori generators");
    for (const auto& gen : mori_generators) {
      if (static_cast<int>(gen.size()) != r)
        throw error("geometry '" + name + "': Mori generator length mismatch");
      for (int c : gen)
        if (c < 0) throw error("geometry '" + name + "': invariant 'nef_basis' violated");
      if (ddeg_of(gen) < 0)
        throw error("geometry '" + name + "': invariant 'nef_anticanonical' violated");
    }
  }
};

/// Effective curve class: coordinates p_a . beta, divisor pairings D_i . beta,
/// and anticanonical degree D . beta.
struct CurveClass {
  std::vector<int> coords;
  std::vector<int> pairings;
  int ddeg = 0;
};

/// All classes in the Mori monoid with D.beta <= max_ddeg; generators of
/// degree zero are used at most zero_deg_cap times each. Deduplication is by
/// coordinate vector (non-simplicial cones reach classes along several paths).
inline std::vector<CurveClass> enumerate_classes(const ToricGeometry& geom, int max_ddeg,
                                                 int zero_deg_cap, bool include_zero = true) {
  geom.validate();
  int r = geom.picard_rank;
  std::vector<std::vector<int>> positive, zero;
  for (const auto& g : geom.mori_generators)
    (geom.ddeg_of(g) == 0 ? zero : positive).push_back(g);

  std::set<std::vector<int>> seen;
  std::vector<int> origin(r, 0);
  seen.insert(origin);
  std::queue<std::vector<int>> frontier;
  frontier.push(origin);
  while (!frontier.empty()) {
    std::vector<int> c = frontier.front();
    frontier.pop();
    for (const auto& g : positive) {
      std::vector<int> next(r);
      for (int a = 0; a < r; ++a) next[a] = c[a] + g[a];
      if (geom.ddeg_of(next) > max_ddeg) continue;
      if (seen.insert(next).second) frontier.push(next);
    }
  }
  for (const auto& g : zero) {
    std::set<std::vector<int>> extended = seen;
    for (const auto& c : seen) {
      std::vector<int> cur = c;
      for (int k = 1; k <= zero_deg_cap; ++k) {
        for (int a = 0; a < r; ++a) cur[a] += g[a];
        extended.insert(cur);
      }
    }
    seen = std::move(extended);
  }

  std::vector<CurveClass> out;
  out.reserve(seen.size());
  for (const auto& coords : seen) {
    bool is_origin = coords == origin;
    if (is_origin && !include_zero) continue;
    CurveClass cc;
    cc.coords = coords;
    cc.pairings.resize(geom.ndivisors());
    int total = 0;
    for (int i = 0; i < geom.ndivisors(); ++i) {
      int v = 0;
      for (int a = 0; a < r; ++a) v += geom.pairing_matrix[i][a] * coords[a];
      cc.pairings[i] = v;
      total += v;
    }
    cc.ddeg = total;
    if (cc.ddeg != geom.ddeg_of(coords))
      throw error("geometry '" + geom.name + "': inconsistent degree data");
    out.push_back(std::move(cc));
  }
  std::sort(out.begin(), out.end(), [](const CurveClass& a, const CurveClass& b) {
    return std::tie(a.ddeg, a.coords) < std::tie(b.ddeg, b.coords);
  });
  return out;
}

namespace detail {

inline SeriesContext toric_context(const ToricGeometry& geom, int cap, int zero_deg_cap,
                                   const std::string& stem) {
  int r = geom.picard_rank;
  std::vector<std::string> names(r);
  std::vector<int> zcaps(r, 0);
  for (int a = 0; a < r; ++a) {
    names[a] = stem + std::to_string(a + 1);
    if (geom.anticanonical[a] != 0) continue;
    // Exponent bound for a weight-zero direction: zero-degree generators are
    // used at most zero_deg_cap times, positive ones at most cap times.
    int zmax = 0, pmax = 0;
    for (const auto& g : geom.mori_generators) {
      int& slot = geom.ddeg_of(g) == 0 ? zmax : pmax;
      slot = std::max(slot, g[a]);
    }
    zcaps[a] = zero_deg_cap * zmax + cap * pmax;
    if (zcaps[a] < 1) zcaps[a] = 1;
  }
  return SeriesContext(names, geom.anticanonical, cap, zcaps);
}

inline int max_weight(const ToricGeometry& geom) {
  return *std::max_element(geom.anticanonical.begin(), geom.anticanonical.end());
}

}  // namespace detail

/// g(y) = sum over classes with all D_i.beta >= 0 and D.beta >= 2 of
/// (D.beta - 1)! / prod_i (D_i.beta)! y^beta. The D.beta >= 2 restriction is
/// what makes the descendant exponent in the defining sum well formed; on the
/// bundled geometries every D.beta = 1 class has a negative divisor pairing,
/// so it never bites (asserted in the tests).
inline Series g_series(const ToricGeometry& geom, int cap, int zero_deg_cap = 0) {
  geom.validate();
  if (cap < detail::max_weight(geom))
    throw error("g_series: cap below the largest variable weight of '" + geom.name + "'");
  SeriesContext ctx = detail::toric_context(geom, cap, zero_deg_cap, "y");
  Series g(ctx);
  for (const CurveClass& c : enumerate_classes(geom, cap, zero_deg_cap, false)) {
    if (c.ddeg < 2) continue;
    if (std::any_of(c.pairings.begin(), c.pairings.end(), [](int v) { return v < 0; }))
      continue;
    Rational coeff(factorial(c.ddeg - 1));
    for (int v : c.pairings) coeff /= Rational(factorial(v));
    Monomial m(c.coords.begin(), c.coords.end());
    g.add_term(m, coeff);
  }
  return g;
}

/// Mirror-map correction from classes with c_1.beta = 0 and exactly one
/// negative divisor pairing; identically zero for Fano geometries. Component a
/// collects sum_j (class of D_j)_a (-D_j.beta - 1)! / prod_{i != j} (D_i.beta)! y^beta.
inline std::vector<Series> absolute_correction(const ToricGeometry& geom, int cap,
                                               int zero_deg_cap = 0) {
  geom.validate();
  SeriesContext ctx = detail::toric_context(geom, cap, zero_deg_cap, "y");
  std::vector<Series> corr(geom.picard_rank, Series(ctx));
  for (const CurveClass& c : enumerate_classes(geom, cap, zero_deg_cap, false)) {
    if (c.ddeg != 0) continue;
    int neg = -1;
    bool eligible = true;
    for (int i = 0; i < geom.ndivisors() && eligible; ++i) {
      if (c.pairings[i] >= 0) continue;
      if (neg >= 0) eligible = false;
      neg = i;
    }
    if (!eligible || neg < 0) continue;
    Rational val(factorial(-c.pairings[neg] - 1));
    for (int i = 0; i < geom.ndivisors(); ++i)
      if (i != neg) val /= Rational(factorial(c.pairings[i]));
    Monomial m(c.coords.begin(), c.coords.end());
    for (int a = 0; a < geom.picard_rank; ++a)
      corr[a].add_term(m, geom.divisor_classes[neg][a] * val);
  }
  return corr;
}

/// Change of variables q_a = y_a exp(m_a g(y) + corr_a(y)) together with its
/// functional inverse y_a(q).
struct MirrorMap {
  std::vector<Series> units;    // u_a(y), constant term 1
  std::vector<Series> forward;  // q_a(y) = y_a u_a(y)
  std::vector<Series> inverse;  // y_a(q)
};

inline MirrorMap relative_mirror_map(const ToricGeometry& geom, int cap,
                                     int zero_deg_cap = 0) {
  Series g = g_series(geom, cap, zero_deg_cap);
  std::vector<Series> corr = absolute_correction(geom, cap, zero_deg_cap);
  const SeriesContext& yctx = g.context();
  SeriesContext qctx = detail::toric_context(geom, cap, zero_deg_cap, "q");

  MirrorMap mm;
  for (int a = 0; a < geom.picard_rank; ++a) {
    Series u = lgpot::exp(g * Rational(geom.anticanonical[a]) + corr[a]);
    mm.forward.push_back(Series::variable(yctx, a) * u);
    mm.units.push_back(std::move(u));
  }
  mm.inverse = invert_map(mm.forward, qctx);
  return mm;
}

/// The potential P(q) = exp(g(y(q))); the global x^{-1} prefactor is
/// bookkeeping and is reported as metadata, never as a series term.
inline Series proper_potential(const ToricGeometry& geom, int cap, int zero_deg_cap = 0) {
  Series g = g_series(geom, cap, zero_deg_cap);
  MirrorMap mm = relative_mirror_map(geom, cap, zero_deg_cap);
  return lgpot::exp(substitute(g, mm.inverse));
}

/// Reads off column p = 1 of the invariant table from the potential under the
/// specialization q^beta -> t^{D.beta}: N_{k-1,1} = [t^k] P / (k-1) for k >= 2.
/// Degree-zero curve classes (F2-type towers) all land in t^0, and the formal
/// parameters are deliberately not resummed, so such geometries are rejected.
inline InvariantTable two_point_invariants(const Series& potential, const ToricGeometry& geom) {
  const SeriesContext& ctx = potential.context();
  if (ctx.weights != geom.anticanonical)
    throw error("two_point_invariants: potential does not match geometry grading");
  if (geom.has_zero_degree_generator())
    throw error("two_point_invariants: geometry '" + geom.name +
                "' has degree-zero curve classes; the t-specialization does not resum them");
  std::map<int, Rational> by_grade;
  for (const auto& [m, c] : potential.terms())
    by_grade[ctx.weighted_degree(m)] += c;
  if (by_grade.count(0) == 0 || by_grade[0] != 1)
    throw error("two_point_invariants: potential constant term is not 1");
  if (by_grade.count(1) && by_grade[1] != 0)
    throw error("two_point_invariants: nonzero t^1 coefficient");

  InvariantTable table;
  table.dgrades_modulus = geom.dgrades_modulus();
  table.complete_through = ctx.cap;
  for (const auto& [k, c] : by_grade) {
    if (k < 2 || c == 0) continue;
    if (!table.in_dgrades(k))
      throw error("two_point_invariants: coefficient at unrealizable grade t^" +
                  std::to_string(k));
    table.set(k - 1, 1, c / (k - 1));
  }
  return table;
}

}  // namespace lgpot
