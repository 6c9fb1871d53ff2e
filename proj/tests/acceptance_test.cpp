#include <gtest/gtest.h>

#include <chrono>
#include <iostream>
#include <random>

#include "lgpot/json_io.hpp"
#include "lgpot/periods.hpp"
#include "lgpot/theta.hpp"
#include "lgpot/toric.hpp"
#include "test_util.hpp"

namespace lgpot {
namespace {

using testutil::corpus_path;

class Acceptance : public ::testing::Test {
 protected:
  void Label(int number, const std::string& text) {
    number_ = number;
    text_ = text;
    start_ = std::chrono::steady_clock::now();
  }

  double Elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void TearDown() override {
    std::cout << "[ACCEPTANCE] criterion " << number_ << " (" << text_ << "): "
              << (HasFailure() ? "FAIL" : "PASS") << std::endl;
  }

  int number_ = 0;
  std::string text_;
  std::chrono::steady_clock::time_point start_;
};

ToricGeometry p2() { return load_geometry(corpus_path("p2.json")); }

InvariantTable p2_full_table(int pmax, int nmax) {
  ToricGeometry geom = p2();
  Series pot = proper_potential(geom, nmax + pmax + 1);
  return wdvv_extend_table(two_point_invariants(pot, geom), pmax, nmax);
}

TEST_F(Acceptance, Criterion01PotentialP2) {
  Label(1, "P2 potential 1 + 2q + 5q^2 + 32q^3");
  Series p = proper_potential(p2(), 9);
  SeriesContext ctx = p.context();
  Series expected(ctx);
  expected.add_term({0}, 1);
  expected.add_term({1}, 2);
  expected.add_term({2}, 5);
  expected.add_term({3}, 32);
  EXPECT_EQ(p, expected);
  EXPECT_LT(Elapsed(), 1.0);
}

TEST_F(Acceptance, Criterion02InvariantExtraction) {
  Label(2, "P2 invariants N_{2,1}=1, N_{5,1}=1, N_{8,1}=4");
  ToricGeometry geom = p2();
  InvariantTable t = two_point_invariants(proper_potential(geom, 9), geom);
  EXPECT_EQ(t.get(2, 1), Rational(1));
  EXPECT_EQ(t.get(5, 1), Rational(1));
  EXPECT_EQ(t.get(8, 1), Rational(4));
}

TEST_F(Acceptance, Criterion03PeriodBridgeP2) {
  Label(3, "P2 period bridge exact through t^15");
  Series period_g = g_from_period(classical_period(load_laurent(corpus_path("p2_mirror.json")), 15));
  Series toric_g = g_series(p2(), 15);
  SeriesContext tctx({"t"}, {1}, 15);
  Series t3(tctx);
  t3.add_term({3}, 1);
  EXPECT_EQ(substitute(toric_g, {t3}), period_g);
  EXPECT_LT(Elapsed(), 1.0);
}

TEST_F(Acceptance, Criterion04PeriodBridgeP1xP1) {
  Label(4, "P1xP1 binomial periods and bridge through t^12");
  PeriodSequence pi = classical_period(load_laurent(corpus_path("p1xp1_mirror.json")), 12);
  for (int k = 0; k <= 12; ++k) {
    if (k % 2 == 1) {
      EXPECT_EQ(pi.coeffs[k], Rational(0));
    } else {
      BigInt c = factorial(k) / (factorial(k / 2) * factorial(k / 2));
      EXPECT_EQ(pi.coeffs[k], Rational(c * c));
    }
  }
  Series period_g = g_from_period(pi);
  Series toric_g = g_series(load_geometry(corpus_path("p1xp1.json")), 12);
  SeriesContext tctx({"t"}, {1}, 12);
  Series t2(tctx);
  t2.add_term({2}, 1);
  EXPECT_EQ(substitute(toric_g, {t2, t2}), period_g);
}

bool product_suite_passes(const InvariantTable& t) {
  for (int p1 = 1; p1 <= 3; ++p1)
    for (int p2 = p1; p2 <= 3; ++p2)
      if (!verify_product(t, p1, p2, 12).pass) return false;
  return true;
}

TEST_F(Acceptance, Criterion05ThetaProductRule) {
  Label(5, "theta product rule on P2 through t^12, corruption-sensitive");
  InvariantTable full = p2_full_table(6, 11);
  InvariantTable t;
  t.dgrades_modulus = full.dgrades_modulus;
  t.complete_through = 12;
  for (const auto& [key, v] : full.entries)
    if (key.first + key.second <= 12) t.entries[key] = v;
  EXPECT_TRUE(product_suite_passes(t));
  for (const auto& [key, v] : t.entries) {
    InvariantTable corrupted = t;
    corrupted.entries[key] = v + 1;
    EXPECT_FALSE(product_suite_passes(corrupted))
        << "corruption at N_{" << key.first << "," << key.second << "} undetected";
  }
  EXPECT_LT(Elapsed(), 5.0);
}

TEST_F(Acceptance, Criterion06GeneralWdvv) {
  Label(6, "general WDVV identity, p1,p2 <= 4, k <= 8");
  InvariantTable t = p2_full_table(8, 12);
  for (int p1 = 1; p1 <= 4; ++p1)
    for (int p2 = p1; p2 <= 4; ++p2)
      EXPECT_TRUE(verify_wdvv(t, p1, p2, 8).pass) << p1 << "," << p2;
}

TEST_F(Acceptance, Criterion07DegreeZeroIdentity) {
  Label(7, "degree-zero identity sum (-1)^{l-1} g^l / l! = 1 - exp(-g)");
  SeriesContext ctx({"u", "v"}, {1, 1}, 8);
  std::mt19937_64 rng(2024);
  Series one = Series::constant(ctx, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Series g = testutil::random_series(rng, ctx, true);
    Series sum(ctx);
    Series power = one;
    Rational lfact = 1;
    for (int l = 1; l <= 8; ++l) {
      power = power * g;
      lfact *= l;
      sum += power * (Rational(l % 2 == 1 ? 1 : -1) / lfact);
    }
    EXPECT_EQ(sum, one - exp(-g));
  }
}

TEST_F(Acceptance, Criterion08SeriesEngine) {
  Label(8, "series engine: 100 reversal round trips, exp/log, dense oracle");
  SeriesContext yctx({"y1", "y2"}, {1, 1}, 8);
  SeriesContext qctx({"q1", "q2"}, {1, 1}, 8);
  std::mt19937_64 rng(4096);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Series> maps = testutil::random_unit_diagonal_map(rng, yctx);
    std::vector<Series> inv = invert_map(maps, qctx);
    for (int i = 0; i < 2; ++i) {
      EXPECT_EQ(substitute(maps[i], inv), Series::variable(qctx, i));
      EXPECT_EQ(substitute(inv[i], maps), Series::variable(yctx, i));
    }
  }
  Series one = Series::constant(yctx, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Series f = testutil::random_series(rng, yctx, true);
    EXPECT_EQ(log1p(exp(f) - one), f);
    EXPECT_EQ(exp(log1p(f)), one + f);
  }
  // Dense convolution oracle against the sparse product.
  for (int trial = 0; trial < 50; ++trial) {
    Series a = testutil::random_series(rng, yctx, false);
    Series b = testutil::random_series(rng, yctx, false);
    std::vector<std::vector<Rational>> da(9, std::vector<Rational>(9)), db = da,
        dp(9, std::vector<Rational>(9));
    for (const auto& [m, c] : a.terms()) da[m[0]][m[1]] = c;
    for (const auto& [m, c] : b.terms()) db[m[0]][m[1]] = c;
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; i + j <= 8; ++j)
        for (int k = 0; i + k <= 8; ++k)
          for (int l = 0; i + j + k + l <= 8; ++l) dp[i + k][j + l] += da[i][j] * db[k][l];
    Series sparse = a * b;
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; i + j <= 8; ++j) EXPECT_EQ(sparse.coeff({i, j}), dp[i][j]);
  }
}

TEST_F(Acceptance, Criterion09SemiFanoF2) {
  Label(9, "semi-Fano F2 correction and pipeline; Fano corrections vanish");
  ToricGeometry f2 = load_geometry(corpus_path("f2.json"));
  std::vector<Series> corr = absolute_correction(f2, 8, 3);
  EXPECT_FALSE(corr[0].is_zero());
  EXPECT_FALSE(corr[1].is_zero());

  MirrorMap mm = relative_mirror_map(f2, 8, 3);
  const SeriesContext& qctx = mm.inverse.front().context();
  const SeriesContext& yctx = mm.forward.front().context();
  for (int a = 0; a < 2; ++a) {
    EXPECT_EQ(substitute(mm.forward[a], mm.inverse), Series::variable(qctx, a));
    EXPECT_EQ(substitute(mm.inverse[a], mm.forward), Series::variable(yctx, a));
  }
  Series pot = proper_potential(f2, 8, 3);
  EXPECT_EQ(pot.constant_term(), Rational(1));

  for (const char* file : {"p2.json", "p1xp1.json", "f1.json", "p3.json", "dp7.json",
                           "dp6.json"}) {
    for (const Series& c : absolute_correction(load_geometry(corpus_path(file)), 6, 2))
      EXPECT_TRUE(c.is_zero()) << file;
  }
}

TEST_F(Acceptance, Criterion10V10Example) {
  Label(10, "V10 regularized period and order-6 pipeline");
  PeriodSequence pi = v10_regularized_period(6);
  EXPECT_EQ(pi.coeffs[0], Rational(1));
  EXPECT_EQ(pi.coeffs[1], Rational(0));  // -6 - 2 + 8 = 0
  Series p = potential_from_period(pi, 6);
  EXPECT_EQ(p.constant_term(), Rational(1));
}

TEST_F(Acceptance, Criterion11CrossPipelineCoherence) {
  Label(11, "period potential equals toric potential under q = s^3");
  Series period_pot =
      potential_from_period(classical_period(load_laurent(corpus_path("p2_mirror.json")), 9), 9);
  Series toric_pot = proper_potential(p2(), 9);
  SeriesContext sctx({"s"}, {1}, 9);
  Series s3(sctx);
  s3.add_term({3}, 1);
  EXPECT_EQ(substitute(toric_pot, {s3}), period_pot);
}

}  // namespace
}  // namespace lgpot
