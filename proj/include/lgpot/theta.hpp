#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "lgpot/rational.hpp"

namespace lgpot {

/// Two-point invariant table N_{n,p}, graded by anticanonical degree n+p.
/// Realizable degrees are the positive multiples of dgrades_modulus; entries
/// exist only at those grades. Absent entries read as zero.
///
/// Genuine zeros occur (N_{3,1} = 0 on F1), so presence alone cannot certify
/// completeness. Pipeline-built tables therefore carry complete_through: every
/// absent entry of grade <= complete_through is a real zero. Zero means the
/// coverage is unknown (hand-assembled input).
struct InvariantTable {
  int dgrades_modulus = 1;
  int complete_through = 0;
  std::map<std::pair<int, int>, Rational> entries;  // keyed (n, p)

  bool in_dgrades(int d) const { return d > 0 && d % dgrades_modulus == 0; }

  bool has(int n, int p) const { return entries.count({n, p}) > 0; }

  Rational get(int n, int p) const {
    auto it = entries.find({n, p});
    return it == entries.end() ? Rational(0) : it->second;
  }

  void set(int n, int p, const Rational& v) {
    if (n < 1 || p < 1) throw error("invariant table: indices must be positive");
    if (!in_dgrades(n + p))
      throw error("invariant table: grade " + std::to_string(n + p) +
                  " is not realizable (modulus " + std::to_string(dgrades_modulus) + ")");
    entries[{n, p}] = v;
  }
};

/// Builds columns 2..pmax from column 1 by the k-indexed recursion
///   k N_{k,p+1} = (k+1)N_{k+1,p} + (k+p)N_{k+p,1}
///                 + sum_{m+n=k} m n N_{m,1} N_{n,p}
///                 - sum_{r=1}^{p-1} (p-r) N_{p-r,1} k N_{k,r}.
/// Column 1 must be complete through n = nmax + pmax; each derived column p
/// then comes out complete through n = nmax + pmax - p + 1, hence the whole
/// result through grade nmax + pmax + 1.
inline InvariantTable wdvv_extend_table(const InvariantTable& col1, int pmax, int nmax) {
  if (pmax < 1 || nmax < 1) throw error("wdvv_extend_table: pmax and nmax must be positive");
  for (const auto& [key, v] : col1.entries)
    if (key.second != 1)
      throw error("wdvv_extend_table: input table has entries outside column 1");
  if (col1.complete_through > 0) {
    if (col1.complete_through < nmax + pmax + 1)
      throw error("wdvv_extend_table: column 1 is only complete through grade " +
                  std::to_string(col1.complete_through) + ", need " +
                  std::to_string(nmax + pmax + 1));
  } else {
    for (int n = 1; n <= nmax + pmax; ++n)
      if (col1.in_dgrades(n + 1) && !col1.has(n, 1))
        throw error("wdvv_extend_table: column 1 is missing entry n=" + std::to_string(n));
  }

  InvariantTable t = col1;
  t.complete_through = nmax + pmax + 1;
  for (int p = 1; p < pmax; ++p) {
    for (int k = 1; k <= nmax + pmax - p; ++k) {
      if (!t.in_dgrades(k + p + 1)) continue;
      Rational v = (k + 1) * t.get(k + 1, p) + (k + p) * t.get(k + p, 1);
      for (int m = 1; m < k; ++m)
        v += m * (k - m) * t.get(m, 1) * t.get(k - m, p);
      for (int r = 1; r < p; ++r)
        v -= (p - r) * t.get(p - r, 1) * k * t.get(k, r);
      t.set(k, p + 1, v / k);
    }
  }
  return t;
}

/// Theta-product structure constant N_{p1,p2,-r}; its term sits at t^{p1+p2-r}.
struct StructureConstant {
  int p1 = 0, p2 = 0, r = 0;
  Rational value;

  int tpow() const { return p1 + p2 - r; }
};

inline StructureConstant structure_constants(const InvariantTable& t, int p1, int p2, int r) {
  if (p1 < 1 || p2 < 1) throw error("structure_constants: contact orders must be positive");
  if (r < 0) throw error("structure_constants: r must be nonnegative");
  int a = std::min(p1, p2), b = std::max(p1, p2);
  Rational v;
  if (r == p1 + p2) {
    v = 1;
  } else if (r >= b) {
    v = 0;
  } else if (r >= a) {
    v = (b - r) * t.get(b - r, a);
  } else {
    v = (a - r) * t.get(a - r, b) + (b - r) * t.get(b - r, a);
  }
  return StructureConstant{p1, p2, r, v};
}

/// Theta function data: the x^{-p} principal part is implicit; terms[n] is the
/// coefficient n N_{n,p} of t^{n+p} x^n.
struct ThetaSeries {
  int p = 1;
  std::map<int, Rational> terms;
};

inline ThetaSeries theta_series(const InvariantTable& t, int p, int nmax) {
  if (p < 1) throw error("theta_series: p must be positive");
  ThetaSeries theta;
  theta.p = p;
  for (int n = 1; n <= nmax; ++n) {
    Rational c = n * t.get(n, p);
    if (c != 0) theta.terms[n] = c;
  }
  return theta;
}

struct Mismatch {
  int xpow = 0, tpow = 0;
  Rational lhs, rhs;
};

struct VerifyReport {
  bool pass = true;
  std::vector<Mismatch> mismatches;
};

namespace detail {

using CoeffGrid = std::map<std::pair<int, int>, Rational>;  // keyed (tpow, xpow)

inline void accumulate(CoeffGrid& g, int tpow, int xpow, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = g.try_emplace({tpow, xpow}, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) g.erase(it);
  }
}

inline VerifyReport compare_grids(const CoeffGrid& lhs, const CoeffGrid& rhs) {
  VerifyReport report;
  for (const auto& [key, va] : lhs) {
    auto it = rhs.find(key);
    Rational vb = it == rhs.end() ? Rational(0) : it->second;
    if (va != vb) report.mismatches.push_back({key.second, key.first, va, vb});
  }
  for (const auto& [key, vb] : rhs) {
    if (lhs.count(key)) continue;
    report.mismatches.push_back({key.second, key.first, Rational(0), vb});
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& a, const Mismatch& b) {
              return std::tie(a.tpow, a.xpow) < std::tie(b.tpow, b.xpow);
            });
  report.pass = report.mismatches.empty();
  return report;
}

}  // namespace detail

/// Checks theta_{p1} * theta_{p2} = sum_r N_{p1,p2,-r} t^{p1+p2-r} theta_r
/// coefficientwise in (x, t) for all terms with t-power <= nmax.
inline VerifyReport verify_product(const InvariantTable& t, int p1, int p2, int nmax) {
  if (p1 < 1 || p2 < 1) throw error("verify_product: contact orders must be positive");
  if (t.complete_through > 0 && nmax > t.complete_through)
    throw error("verify_product: table complete through grade " +
                std::to_string(t.complete_through) + ", cannot compare through t^" +
                std::to_string(nmax));
  detail::CoeffGrid lhs, rhs;

  detail::accumulate(lhs, 0, -(p1 + p2), 1);
  for (int n = 1; n + p2 <= nmax; ++n)
    detail::accumulate(lhs, n + p2, n - p1, n * t.get(n, p2));
  for (int m = 1; m + p1 <= nmax; ++m)
    detail::accumulate(lhs, m + p1, m - p2, m * t.get(m, p1));
  for (int m = 1; m + 1 + p1 + p2 <= nmax; ++m)
    for (int n = 1; m + n + p1 + p2 <= nmax; ++n)
      detail::accumulate(lhs, m + n + p1 + p2, m + n,
                         m * n * t.get(m, p1) * t.get(n, p2));

  for (int r = 0; r <= p1 + p2; ++r) {
    Rational sc = structure_constants(t, p1, p2, r).value;
    if (sc == 0) continue;
    if (p1 + p2 - r <= nmax) detail::accumulate(rhs, p1 + p2 - r, -r, sc);
    if (r == 0) continue;  // theta_0 = 1: N_{k,0} vanishes by the string equation
    for (int k = 1; k + p1 + p2 <= nmax; ++k)
      detail::accumulate(rhs, k + p1 + p2, k, sc * k * t.get(k, r));
  }
  return detail::compare_grids(lhs, rhs);
}

/// Checks the general WDVV identity
///   (k+p1)N_{k+p1,p2} + (k+p2)N_{k+p2,p1} + sum_{m+n=k} m n N_{m,p1}N_{n,p2}
///     = sum_{r>0} N_{p1,p2,-r} k N_{k,r}
/// for 1 <= k <= kmax. Mismatches are located at x^k, t^{k+p1+p2}.
inline VerifyReport verify_wdvv(const InvariantTable& t, int p1, int p2, int kmax) {
  if (p1 < 1 || p2 < 1) throw error("verify_wdvv: contact orders must be positive");
  if (t.complete_through > 0 && kmax + p1 + p2 > t.complete_through)
    throw error("verify_wdvv: table complete through grade " +
                std::to_string(t.complete_through) + ", cannot check k up to " +
                std::to_string(kmax) + " at (" + std::to_string(p1) + "," +
                std::to_string(p2) + ")");
  VerifyReport report;
  for (int k = 1; k <= kmax; ++k) {
    Rational lhs = (k + p1) * t.get(k + p1, p2) + (k + p2) * t.get(k + p2, p1);
    for (int m = 1; m < k; ++m)
      lhs += m * (k - m) * t.get(m, p1) * t.get(k - m, p2);
    Rational rhs;
    for (int r = 1; r <= p1 + p2; ++r)
      rhs += structure_constants(t, p1, p2, r).value * k * t.get(k, r);
    if (lhs != rhs) report.mismatches.push_back({k, k + p1 + p2, lhs, rhs});
  }
  report.pass = report.mismatches.empty();
  return report;
}

}  // namespace lgpot
