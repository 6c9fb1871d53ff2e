#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgpot/rational.hpp"

namespace lgpot {

// Exponent vector; length fixed by the series context.
using Monomial = std::vector<int>;

/// Shared shape of a truncated multivariate series: variable names, the
/// weighted grading, the truncation order, and exponent bounds for
/// weight-zero variables (weighted degree cannot bound those).
struct SeriesContext {
  std::vector<std::string> vars;
  std::vector<int> weights;
  int cap = 1;
  std::vector<int> zero_caps;

  SeriesContext() = default;

  SeriesContext(std::vector<std::string> names, std::vector<int> w, int c,
                std::vector<int> zc = {})
      : vars(std::move(names)), weights(std::move(w)), cap(c), zero_caps(std::move(zc)) {
    if (vars.size() != weights.size())
      throw error("series context: variable/weight count mismatch");
    if (vars.empty()) throw error("series context: at least one variable required");
    if (cap < 1) throw error("series context: cap must be positive");
    for (int wi : weights)
      if (wi < 0) throw error("series context: negative weight");
    if (zero_caps.empty()) zero_caps.assign(weights.size(), 0);
    if (zero_caps.size() != weights.size())
      throw error("series context: zero_caps length mismatch");
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] == 0 && zero_caps[i] < 1)
        throw error("series context: weight-zero variable '" + vars[i] +
                    "' requires a positive exponent cap");
    }
  }

  int nvars() const { return static_cast<int>(weights.size()); }

  bool has_zero_weight() const {
    return std::find(weights.begin(), weights.end(), 0) != weights.end();
  }

  int weighted_degree(const Monomial& m) const {
    int d = 0;
    for (int i = 0; i < nvars(); ++i) d += weights[i] * m[i];
    return d;
  }

  bool admissible(const Monomial& m) const {
    if (weighted_degree(m) > cap) return false;
    for (int i = 0; i < nvars(); ++i)
      if (weights[i] == 0 && m[i] > zero_caps[i]) return false;
    return true;
  }

  // Every non-constant admissible monomial has order >= 1 in this filtration,
  // and no admissible monomial exceeds max_order(); power iterations stop there.
  int max_order() const {
    int b = cap;
    for (int i = 0; i < nvars(); ++i)
      if (weights[i] == 0) b += zero_caps[i];
    return b;
  }

  // Variable names are labels for output; they do not gate interoperation.
  bool compatible(const SeriesContext& o) const {
    return weights == o.weights && cap == o.cap && zero_caps == o.zero_caps;
  }
};

/// Truncated multivariate power series with exact rational coefficients,
/// graded by weighted total degree. Immutable in spirit: all operations
/// return fresh values. No explicit zeros are stored.
class Series {
 public:
  using TermMap = std::map<Monomial, Rational>;  // lexicographic by exponents

  explicit Series(SeriesContext ctx) : ctx_(std::move(ctx)) {}

  static Series constant(const SeriesContext& ctx, const Rational& c) {
    Series s(ctx);
    s.add_term(Monomial(ctx.nvars(), 0), c);
    return s;
  }

  static Series variable(const SeriesContext& ctx, int i) {
    if (i < 0 || i >= ctx.nvars()) throw error("series: variable index out of range");
    Monomial m(ctx.nvars(), 0);
    m[i] = 1;
    if (!ctx.admissible(m))
      throw error("series: variable '" + ctx.vars[i] + "' exceeds the truncation order");
    Series s(ctx);
    s.add_term(m, 1);
    return s;
  }

  const SeriesContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coeff(Monomial(ctx_.nvars(), 0)); }

  void add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != ctx_.nvars())
      throw error("series: monomial length mismatch");
    for (int e : m)
      if (e < 0) throw error("series: negative exponent");
    if (c == 0 || !ctx_.admissible(m)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Series& operator+=(const Series& o) {
    require_compatible(o, "add");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Series& operator-=(const Series& o) {
    require_compatible(o, "subtract");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator-(const Series& a) {
    Series r(a.ctx_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, Rational(-c));
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    a.require_compatible(b, "multiply");
    Series r(a.ctx_);
    Monomial m(a.ctx_.nvars());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (int i = 0; i < a.ctx_.nvars(); ++i) m[i] = ma[i] + mb[i];
        if (a.ctx_.admissible(m)) r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  friend Series operator*(const Series& a, const Rational& c) {
    Series r(a.ctx_);
    if (c == 0) return r;
    for (const auto& [m, v] : a.terms_) r.terms_.emplace(m, Rational(v * c));
    return r;
  }

  friend Series operator*(const Rational& c, const Series& a) { return a * c; }

  friend bool operator==(const Series& a, const Series& b) {
    return a.ctx_.compatible(b.ctx_) && a.terms_ == b.terms_;
  }

  /// Re-truncate to a smaller cap (and optionally tighter zero caps).
  Series truncated(int new_cap) const { return truncated(new_cap, ctx_.zero_caps); }

  Series truncated(int new_cap, std::vector<int> new_zero_caps) const {
    if (new_cap > ctx_.cap) throw error("series: cannot truncate to a larger cap");
    Series r(SeriesContext(ctx_.vars, ctx_.weights, new_cap, std::move(new_zero_caps)));
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
  }

 private:
  void require_compatible(const Series& o, const char* op) const {
    if (!ctx_.compatible(o.ctx_))
      throw error(std::string("series: context mismatch in ") + op);
  }

  SeriesContext ctx_;
  TermMap terms_;
};

inline Series pow(const Series& f, int k) {
  if (k < 0) throw error("series: negative power");
  Series r = Series::constant(f.context(), 1);
  for (int i = 0; i < k; ++i) r = r * f;
  return r;
}

/// exp(f) = sum f^k/k! for f with zero constant term. The loop stops once the
/// running power truncates away, which happens after at most max_order() steps.
inline Series exp(const Series& f) {
  if (f.constant_term() != 0) throw error("exp: nonzero constant term");
  Series acc = Series::constant(f.context(), 1);
  Series term = acc;
  int bound = f.context().max_order();
  for (int k = 1; k <= bound; ++k) {
    term = term * f * Rational(1, k);
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

/// log(1+f) = sum (-1)^{k+1} f^k/k for f with zero constant term.
inline Series log1p(const Series& f) {
  if (f.constant_term() != 0) throw error("log1p: nonzero constant term");
  Series acc(f.context());
  Series power = Series::constant(f.context(), 1);
  int bound = f.context().max_order();
  for (int k = 1; k <= bound; ++k) {
    power = power * f;
    if (power.is_zero()) break;
    acc += power * Rational(k % 2 == 1 ? 1 : -1, k);
  }
  return acc;
}

/// 1/f for f with constant term 1 (geometric series in f - 1).
inline Series inverse_unit(const Series& f) {
  if (f.constant_term() != 1) throw error("inverse_unit: constant term must be 1");
  Series h = f - Series::constant(f.context(), 1);
  Series acc = Series::constant(f.context(), 1);
  Series power = acc;
  int bound = f.context().max_order();
  for (int k = 1; k <= bound; ++k) {
    power = power * h;
    if (power.is_zero()) break;
    acc += (k % 2 == 1) ? -power : power;
  }
  return acc;
}

/// Replace variable i of f by images[i]. Images must share one context and
/// have zero constant term; the result lives in the images' context.
inline Series substitute(const Series& f, const std::vector<Series>& images) {
  if (static_cast<int>(images.size()) != f.context().nvars())
    throw error("substitute: expected one image per variable");
  const SeriesContext& target = images.front().context();
  for (const Series& im : images) {
    if (!im.context().compatible(target))
      throw error("substitute: images have mismatched contexts");
    if (im.constant_term() != 0)
      throw error("substitute: image has nonzero constant term");
  }
  int n = f.context().nvars();
  std::vector<int> max_exp(n, 0);
  for (const auto& [m, c] : f.terms())
    for (int i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], m[i]);

  std::vector<std::vector<Series>> powers(n);
  for (int i = 0; i < n; ++i) {
    powers[i].push_back(Series::constant(target, 1));
    for (int e = 1; e <= max_exp[i]; ++e)
      powers[i].push_back(powers[i].back() * images[i]);
  }

  Series out(target);
  for (const auto& [m, c] : f.terms()) {
    Series prod = Series::constant(target, c);
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) prod = prod * powers[i][m[i]];
    out += prod;
  }
  return out;
}

/// Functional inverse of a unit-diagonal coordinate map q_i = y_i u_i(y),
/// u_i(0) = 1. Fixed-point iteration y <- q / u(y) gains one order of
/// accuracy per step, so it stabilizes within max_order() iterations.
inline std::vector<Series> invert_map(const std::vector<Series>& maps,
                                      const SeriesContext& target) {
  if (maps.empty()) throw error("invert_map: empty map list");
  const SeriesContext& ctx = maps.front().context();
  if (static_cast<int>(maps.size()) != ctx.nvars())
    throw error("invert_map: expected one map per variable");
  if (!ctx.compatible(target)) throw error("invert_map: target context mismatch");
  for (const Series& m : maps)
    if (!m.context().compatible(ctx)) throw error("invert_map: maps have mismatched contexts");

  int n = ctx.nvars();
  std::vector<Series> units;
  units.reserve(n);
  for (int i = 0; i < n; ++i) {
    Series u(ctx);
    bool unit_seen = false;
    for (const auto& [m, c] : maps[i].terms()) {
      if (m[i] < 1)
        throw error("invert_map: map " + std::to_string(i) +
                    " is not divisible by its variable");
      Monomial d = m;
      d[i] -= 1;
      bool is_unit = std::all_of(d.begin(), d.end(), [](int e) { return e == 0; });
      if (is_unit) {
        if (c != 1)
          throw error("invert_map: map " + std::to_string(i) +
                      " does not have unit leading coefficient");
        unit_seen = true;
      }
      u.add_term(d, c);
    }
    if (!unit_seen)
      throw error("invert_map: map " + std::to_string(i) + " lacks its leading term");
    units.push_back(std::move(u));
  }

  std::vector<Series> ys;
  ys.reserve(n);
  for (int i = 0; i < n; ++i) ys.push_back(Series::variable(target, i));

  int bound = target.max_order() + 2;
  for (int iter = 0; iter < bound; ++iter) {
    std::vector<Series> next;
    next.reserve(n);
    for (int i = 0; i < n; ++i)
      next.push_back(Series::variable(target, i) * inverse_unit(substitute(units[i], ys)));
    if (next == ys) return ys;
    ys = std::move(next);
  }
  throw error("invert_map: fixed-point iteration did not stabilize");
}

inline std::vector<Series> invert_map(const std::vector<Series>& maps) {
  if (maps.empty()) throw error("invert_map: empty map list");
  return invert_map(maps, maps.front().context());
}

}  // namespace lgpot
