#include <gtest/gtest.h>

#include <random>

#include "rectlb/scalar.hpp"

using rectlb::Scalar;

TEST(Scalar, IntegerAndReciprocalPowers) {
  EXPECT_EQ(pow(Scalar(5), 3), Scalar(125));
  EXPECT_EQ(pow(Scalar(5), -2), Scalar(1, 25));
  EXPECT_EQ(pow(Scalar(7), 0), Scalar(1));
  EXPECT_EQ(pow(Scalar(-2), 3), Scalar(-8));
}

TEST(Scalar, PowMatchesMultiplicationLoop) {
  Scalar loop(1);
  for (int i = 0; i < 40; ++i) loop *= Scalar(2);
  EXPECT_EQ(pow(Scalar(2), 40), loop);
  EXPECT_EQ(pow(Scalar(2), 40).str(), "1099511627776");
  Scalar q(1);
  for (int i = 0; i < 17; ++i) q /= Scalar(3, 2);
  EXPECT_EQ(pow(Scalar(3, 2), -17), q);
}

TEST(Scalar, ZeroToNegativePowerThrows) { EXPECT_THROW(pow(Scalar(0), -1), std::domain_error); }

TEST(Scalar, DivisionByZeroThrows) {
  EXPECT_THROW(Scalar(1) / Scalar(0), std::domain_error);
  EXPECT_THROW(Scalar(1, 0), std::domain_error);
}

TEST(Scalar, NormalizedAndSigned) {
  EXPECT_EQ(Scalar(6, -4), Scalar(-3, 2));
  EXPECT_EQ(Scalar(6, -4).fraction_str(), "-3/2");
  EXPECT_EQ(Scalar(4, 2).fraction_str(), "2/1");
  EXPECT_EQ(Scalar(4, 2).str(), "2");
}

TEST(Scalar, Parse) {
  EXPECT_EQ(Scalar::parse("7"), Scalar(7));
  EXPECT_EQ(Scalar::parse("-3/9"), Scalar(-1, 3));
  EXPECT_EQ(Scalar::parse("2^-63"), pow(Scalar(2), -63));
  EXPECT_THROW(Scalar::parse("1/0"), std::domain_error);
  EXPECT_THROW(Scalar::parse("abc"), std::invalid_argument);
}

TEST(Scalar, FloorCeil) {
  EXPECT_EQ(Scalar(7, 2).floor(), 3);
  EXPECT_EQ(Scalar(7, 2).ceil(), 4);
  EXPECT_EQ(Scalar(-7, 2).floor(), -4);
  EXPECT_EQ(Scalar(-7, 2).ceil(), -3);
  EXPECT_EQ(Scalar(4).floor(), 4);
  EXPECT_EQ(Scalar(4).ceil(), 4);
}

TEST(Scalar, DecimalExamples) {
  EXPECT_EQ(to_decimal(Scalar(1274, 667), 7), "1.9100449");
  EXPECT_EQ(to_decimal(Scalar(1, 2), 3), "0.500");
  EXPECT_EQ(to_decimal(Scalar(6003, 168), 6), "35.732142");
  EXPECT_EQ(to_decimal(Scalar(5), 0), "5");
  EXPECT_EQ(to_decimal(Scalar(-1, 3), 4), "-0.3333");
}

// Schoolbook long division on machine integers.
static std::string long_division(long long num, long long den, int digits) {
  std::string s = std::to_string(num / den);
  long long r = num % den;
  if (digits > 0) s += '.';
  for (int i = 0; i < digits; ++i) {
    r *= 10;
    s += static_cast<char>('0' + r / den);
    r %= den;
  }
  return s;
}

TEST(Scalar, DecimalMatchesLongDivision) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(0, 1000000), den(1, 100000);
  for (int i = 0; i < 500; ++i) {
    const long long n = num(rng), d = den(rng);
    const int digits = static_cast<int>(rng() % 12);
    EXPECT_EQ(to_decimal(Scalar(n, d), digits), long_division(n, d, digits)) << n << "/" << d;
  }
}

TEST(Scalar, FieldLawsOnRandomRationals) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> d(-50, 50), e(1, 50);
  for (int i = 0; i < 300; ++i) {
    const Scalar a(d(rng), e(rng)), b(d(rng), e(rng)), c(d(rng), e(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Scalar(0));
    if (b != Scalar(0)) {
      EXPECT_EQ(a / b * b, a);
    }
    EXPECT_EQ(a < b, (b - a).sign() > 0);
  }
}

TEST(Scalar, JsonRoundTrip) {
  const Scalar x(-22, 7);
  nlohmann::json j = x;
  EXPECT_EQ(j.get<std::string>(), "-22/7");
  EXPECT_EQ(j.get<Scalar>(), x);
}
