#include "lgpot/rational.hpp"

#include <gtest/gtest.h>

namespace lgpot {
namespace {

TEST(Rational, NormalizedLowestTerms) {
  Rational q(-4, 6);
  EXPECT_EQ(numerator(q), -2);
  EXPECT_EQ(denominator(q), 3);
  Rational r = rational_from_string("5/-10");
  EXPECT_GT(denominator(r), 0);
  EXPECT_EQ(r, Rational(-1, 2));
}

TEST(Rational, ExactArithmetic) {
  Rational a(560, 3), b(1, 3);
  EXPECT_EQ(a + b, Rational(187));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  Rational big = Rational(factorial(40)) / Rational(factorial(20));
  EXPECT_EQ(big * Rational(factorial(20)), Rational(factorial(40)));
}

TEST(Rational, Factorial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
  EXPECT_THROW(factorial(-1), error);
}

TEST(Rational, StringRoundTrip) {
  EXPECT_EQ(to_string(Rational(560, 3)), "560/3");
  EXPECT_EQ(to_string(Rational(-7)), "-7");
  EXPECT_EQ(rational_from_string("560/3"), Rational(560, 3));
  EXPECT_EQ(rational_from_string("-7"), Rational(-7));
  EXPECT_EQ(rational_from_string("-4/6"), Rational(-2, 3));
  EXPECT_THROW(rational_from_string("1/0"), error);
  EXPECT_THROW(rational_from_string("abc"), error);
}

}  // namespace
}  // namespace lgpot
