#pragma once

#include <map>
#include <vector>

#include "lgpot/series.hpp"

namespace lgpot {

/// Laurent polynomial with integer exponent vectors (negative allowed) and
/// exact rational coefficients. No duplicate exponent vectors.
struct LaurentPolynomial {
  int nvars = 0;
  std::map<std::vector<int>, Rational> terms;

  void add_term(const std::vector<int>& exp, const Rational& c) {
    if (static_cast<int>(exp.size()) != nvars)
      throw error("laurent polynomial: exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(exp, c);
    if (!inserted) throw error("laurent polynomial: duplicate exponent vector");
  }
};

/// pi_k = constant term of f^k, k = 0..K.
struct PeriodSequence {
  std::vector<Rational> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline PeriodSequence classical_period(const LaurentPolynomial& f, int K) {
  if (K < 0) throw error("classical_period: negative order");
  if (f.nvars < 1) throw error("classical_period: polynomial has no variables");
  PeriodSequence out;
  out.coeffs.assign(K + 1, Rational(0));
  out.coeffs[0] = 1;
  std::vector<int> origin(f.nvars, 0);
  std::map<std::vector<int>, Rational> power;
  power[origin] = 1;
  std::vector<int> e(f.nvars);
  for (int k = 1; k <= K; ++k) {
    std::map<std::vector<int>, Rational> next;
    for (const auto& [ea, ca] : power) {
      for (const auto& [eb, cb] : f.terms) {
        for (int i = 0; i < f.nvars; ++i) e[i] = ea[i] + eb[i];
        auto [it, inserted] = next.try_emplace(e, Rational(ca * cb));
        if (!inserted) {
          it->second += ca * cb;
          if (it->second == 0) next.erase(it);
        }
      }
    }
    power = std::move(next);
    auto it = power.find(origin);
    if (it != power.end()) out.coeffs[k] = it->second;
  }
  return out;
}

/// Anti-derivative bridge: g(t) = sum_{k>=2} pi_k t^k / k, normalized with
/// g(0) = 0 and no linear term, so that 1 + t g'(t) reproduces the
/// regularized period.
inline Series g_from_period(const PeriodSequence& pi, int cap = -1) {
  if (pi.coeffs.empty() || pi.coeffs[0] != 1)
    throw error("g_from_period: period must start with pi_0 = 1");
  if (pi.order() >= 1 && pi.coeffs[1] != 0)
    throw error("g_from_period: nonzero pi_1 (not a Fano-mirror period)");
  if (cap < 0) cap = pi.order();
  if (cap > pi.order()) throw error("g_from_period: period too short for requested order");
  SeriesContext ctx({"t"}, {1}, std::max(cap, 1));
  Series g(ctx);
  for (int k = 2; k <= cap; ++k) g.add_term({k}, pi.coeffs[k] / k);
  return g;
}

/// Single-variable pipeline: s = Y exp(g(Y)) is inverted and the potential
/// exp(g(Y(s))) returned, graded by anticanonical degree. The x^{-1}
/// prefactor stays metadata, as in the multivariable pipeline.
inline Series potential_from_period(const PeriodSequence& pi, int cap) {
  if (cap < 1) throw error("potential_from_period: order must be positive");
  Series g = g_from_period(pi, cap);
  SeriesContext yctx({"Y"}, {1}, cap);
  Series gy(yctx);
  for (const auto& [m, c] : g.terms()) gy.add_term(m, c);
  Series forward = Series::variable(yctx, 0) * lgpot::exp(gy);
  SeriesContext sctx({"s"}, {1}, cap);
  std::vector<Series> inverse = invert_map({forward}, sctx);
  return lgpot::exp(substitute(gy, inverse));
}

inline Rational harmonic(int m) {
  Rational h;
  for (int j = 1; j <= m; ++j) h += Rational(1, j);
  return h;
}

/// Regularized quantum period of the rank-one Fano threefold V10: the quantum
/// period
///   G(y) = e^{-6y} sum_{l,m>=0} (-1)^{l+m} y^{l+m}
///          ((l+m)!)^2 (2l+2m)! / ((l!)^5 (m!)^5) (1 - 5(m-l)H_m)
/// is expanded exactly and regularized coefficientwise, pi_k = k! [y^k] G.
inline PeriodSequence v10_regularized_period(int K) {
  if (K < 0) throw error("v10_regularized_period: negative order");
  SeriesContext ctx({"y"}, {1}, std::max(K, 1));
  Series inner(ctx);
  for (int total = 0; total <= K; ++total) {
    Rational sum;
    for (int l = 0; l <= total; ++l) {
      int m = total - l;
      Rational val(factorial(total) * factorial(total) * factorial(2 * total));
      val /= Rational(pow(factorial(l), 5) * pow(factorial(m), 5));
      val *= Rational(1) - 5 * (m - l) * harmonic(m);
      sum += val;
    }
    if (total % 2 == 1) sum = -sum;
    inner.add_term({total}, sum);
  }
  Series exponent(ctx);
  exponent.add_term({1}, -6);
  Series G = lgpot::exp(exponent) * inner;

  PeriodSequence out;
  out.coeffs.assign(K + 1, Rational(0));
  for (int k = 0; k <= K; ++k) out.coeffs[k] = Rational(factorial(k)) * G.coeff({k});
  return out;
}

}  // namespace lgpot
