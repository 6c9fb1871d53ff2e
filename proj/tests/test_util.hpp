#pragma once

#include <random>
#include <string>
#include <vector>

#include "lgpot/series.hpp"

namespace lgpot::testutil {

inline std::string corpus_path(const std::string& file) {
  return std::string(LGPOT_CORPUS_DIR) + "/" + file;
}

inline void collect_monomials(const SeriesContext& ctx, int var, Monomial& current,
                              std::vector<Monomial>& out) {
  if (var == ctx.nvars()) {
    out.push_back(current);
    return;
  }
  for (int e = 0;; ++e) {
    current[var] = e;
    if (!ctx.admissible(current)) break;
    collect_monomials(ctx, var + 1, current, out);
  }
  current[var] = 0;
}

// All admissible monomials of the context, constant included.
inline std::vector<Monomial> all_monomials(const SeriesContext& ctx) {
  std::vector<Monomial> out;
  Monomial current(ctx.nvars(), 0);
  collect_monomials(ctx, 0, current, out);
  return out;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(rng), den(rng));
}

inline Series random_series(std::mt19937_64& rng, const SeriesContext& ctx,
                            bool zero_constant_term = true) {
  std::uniform_int_distribution<int> keep(0, 9);
  Series s(ctx);
  for (const Monomial& m : all_monomials(ctx)) {
    bool constant = ctx.weighted_degree(m) == 0 &&
                    std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    if (constant && zero_constant_term) continue;
    if (keep(rng) < 6) s.add_term(m, random_rational(rng));
  }
  return s;
}

// q_i = y_i u_i(y) with random unit u_i.
inline std::vector<Series> random_unit_diagonal_map(std::mt19937_64& rng,
                                                    const SeriesContext& ctx) {
  std::vector<Series> maps;
  for (int i = 0; i < ctx.nvars(); ++i) {
    Series u = Series::constant(ctx, 1) + random_series(rng, ctx, true);
    maps.push_back(Series::variable(ctx, i) * u);
  }
  return maps;
}

}  // namespace lgpot::testutil
